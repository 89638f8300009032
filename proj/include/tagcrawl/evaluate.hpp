#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tagcrawl/corpus.hpp"
#include "tagcrawl/engine.hpp"

namespace tagcrawl {

// Ground-truth relevance judgments, keyed by canonical URL text.
struct RelevanceLabels {
    std::unordered_map<std::string, bool> by_url;

    static RelevanceLabels from_manifest(const CorpusManifest& manifest);
};

struct PrecisionReport {
    std::string query;
    std::string arm;  // "pdd" | "baseline"
    int retained = 0;
    int true_positives = 0;
    double precision = 0.0;      // tp / retained; 0 when nothing was retained
    double precision_at5 = 0.0;  // relevant among the top k, over k
    double precision_at10 = 0.0;
};

// Exact precision of the retained set against the labels. Every result URL
// must be labeled; the offending URL lands in `missing_url` otherwise.
std::optional<PrecisionReport> precision(const RankedResults& results, const RelevanceLabels& labels,
                                         std::string_view query, std::string_view arm,
                                         std::string* missing_url = nullptr);

struct CompareTask {
    std::string name;
    CrawlConfig config;
    const CorpusManifest* manifest = nullptr;
};

struct ComparisonRow {
    std::string name;
    std::string query;
    std::vector<std::string> seeds;
    PrecisionReport baseline;
    PrecisionReport pdd;
};

struct Comparison {
    std::vector<ComparisonRow> rows;
};

// Runs both arms over each task's corpus and reports precision per row.
std::optional<Comparison> compare(const std::vector<CompareTask>& tasks, std::string* error = nullptr);

}  // namespace tagcrawl
