#include "tagcrawl/relevance.hpp"

#include <vector>

#include "tagcrawl/text.hpp"

namespace tagcrawl {

namespace {

std::vector<std::string> split_terms(std::string_view normalized_query) {
    std::vector<std::string> terms;
    size_t start = 0;
    while (start < normalized_query.size()) {
        size_t space = normalized_query.find(' ', start);
        size_t end = space == std::string_view::npos ? normalized_query.size() : space;
        if (end > start) terms.emplace_back(normalized_query.substr(start, end - start));
        start = end + 1;
    }
    return terms;
}

int count_region(const std::string& region_text, const std::vector<std::string>& needles) {
    std::string folded = ascii_fold(region_text);
    int total = 0;
    for (const auto& needle : needles) {
        total += count_substring(folded, needle);
    }
    return total;
}

}  // namespace

std::string normalize_query(std::string_view query) {
    return ascii_fold(collapse_whitespace(query));
}

int count_substring(std::string_view text, std::string_view needle) {
    if (needle.empty() || text.size() < needle.size()) return 0;
    int count = 0;
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string_view::npos) {
        ++count;
        pos += needle.size();  // non-overlapping
    }
    return count;
}

OccurrenceCounts count_occurrences(const TagDocument& doc, std::string_view query, MatchMode mode) {
    std::string normalized = normalize_query(query);
    OccurrenceCounts counts;
    if (normalized.empty()) return counts;

    std::vector<std::string> needles;
    if (mode == MatchMode::AnyTerm) {
        needles = split_terms(normalized);
    } else {
        needles.push_back(normalized);
    }

    counts.body = count_region(doc.body_text, needles);
    counts.title = count_region(doc.title_text, needles);
    counts.url = count_region(doc.url_text, needles);
    for (const auto& meta : doc.meta_texts) {
        counts.meta += count_region(meta, needles);
    }
    for (const auto& heading : doc.heading_texts) {
        counts.heading += count_region(heading, needles);
    }
    return counts;
}

int page_weight(const OccurrenceCounts& c, const WeightConfig& w) {
    return c.body * w.body_weight + c.title * w.title_weight + c.meta * w.meta_weight +
           c.heading * w.heading_weight + c.url * w.url_weight;
}

bool is_relevant(int total_weight, const WeightConfig& w) {
    return total_weight > w.threshold;
}

PageScore score_page(const TagDocument& doc, const CanonicalUrl& url, std::string_view query,
                     const WeightConfig& w, MatchMode mode) {
    PageScore score;
    score.url = url;
    score.counts = count_occurrences(doc, query, mode);
    score.total_weight = page_weight(score.counts, w);
    score.relevant = is_relevant(score.total_weight, w);
    return score;
}

}  // namespace tagcrawl
