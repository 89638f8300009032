#include "tagcrawl/evaluate.hpp"

#include <algorithm>

#include "tagcrawl/baseline.hpp"
#include "tagcrawl/transport.hpp"

namespace tagcrawl {

RelevanceLabels RelevanceLabels::from_manifest(const CorpusManifest& manifest) {
    RelevanceLabels labels;
    for (const auto& entry : manifest.entries) {
        if (entry.relevant) labels.by_url.emplace(entry.url, *entry.relevant);
    }
    return labels;
}

std::optional<PrecisionReport> precision(const RankedResults& results, const RelevanceLabels& labels,
                                         std::string_view query, std::string_view arm,
                                         std::string* missing_url) {
    PrecisionReport report;
    report.query = std::string(query);
    report.arm = std::string(arm);
    report.retained = static_cast<int>(results.entries.size());

    int tp_at5 = 0;
    int tp_at10 = 0;
    for (size_t i = 0; i < results.entries.size(); ++i) {
        const std::string& url = results.entries[i].url.text();
        auto it = labels.by_url.find(url);
        if (it == labels.by_url.end()) {
            if (missing_url) *missing_url = url;
            return std::nullopt;
        }
        if (it->second) {
            ++report.true_positives;
            if (i < 5) ++tp_at5;
            if (i < 10) ++tp_at10;
        }
    }
    report.precision = report.retained == 0
                           ? 0.0
                           : static_cast<double>(report.true_positives) / report.retained;
    report.precision_at5 = tp_at5 / 5.0;
    report.precision_at10 = tp_at10 / 10.0;
    return report;
}

std::optional<Comparison> compare(const std::vector<CompareTask>& tasks, std::string* error) {
    Comparison comparison;
    for (const auto& task : tasks) {
        if (!task.manifest) {
            if (error) *error = "task \"" + task.name + "\" has no corpus";
            return std::nullopt;
        }
        CorpusTransport transport(*task.manifest);
        RelevanceLabels labels = RelevanceLabels::from_manifest(*task.manifest);

        CrawlOutcome pdd_outcome = crawl(task.config, transport);
        CrawlOutcome baseline_outcome = baseline_crawl(task.config, transport);

        std::string missing;
        auto pdd_report = precision(pdd_outcome.results, labels, task.config.query, "pdd", &missing);
        if (!pdd_report) {
            if (error) *error = "missing label for " + missing + " in task \"" + task.name + "\"";
            return std::nullopt;
        }
        auto baseline_report =
            precision(baseline_outcome.results, labels, task.config.query, "baseline", &missing);
        if (!baseline_report) {
            if (error) *error = "missing label for " + missing + " in task \"" + task.name + "\"";
            return std::nullopt;
        }

        ComparisonRow row;
        row.name = task.name;
        row.query = task.config.query;
        for (const auto& seed : task.config.seeds) row.seeds.push_back(seed.text());
        row.pdd = *pdd_report;
        row.baseline = *baseline_report;
        comparison.rows.push_back(std::move(row));
    }
    return comparison;
}

}  // namespace tagcrawl
