#include "tagcrawl/report.hpp"

#include <cstdio>
#include <sstream>

namespace tagcrawl {

namespace {

std::string fixed(double value, int digits = 4) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

std::string percent(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%6.2f%%", value * 100.0);
    return buf;
}

// quotes a CSV field only when it needs it
std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted.push_back(c);
    }
    quoted += "\"";
    return quoted;
}

nlohmann::ordered_json counts_json(const OccurrenceCounts& c) {
    nlohmann::ordered_json j;
    j["meta"] = c.meta;
    j["url"] = c.url;
    j["title"] = c.title;
    j["heading"] = c.heading;
    j["body"] = c.body;
    return j;
}

}  // namespace

std::string ranked_csv(const RankedResults& results) {
    std::ostringstream out;
    out << "rank,t,Nm,Nu,Nt,Nh,Nb,url\n";
    for (size_t i = 0; i < results.entries.size(); ++i) {
        const RankedEntry& e = results.entries[i];
        out << (i + 1) << ',' << e.total_weight << ',' << e.counts.meta << ',' << e.counts.url
            << ',' << e.counts.title << ',' << e.counts.heading << ',' << e.counts.body << ','
            << csv_field(e.url.text()) << '\n';
    }
    return out.str();
}

std::string ranked_table(const RankedResults& results) {
    std::ostringstream out;
    out << "rank     t    Nm    Nu    Nt    Nh    Nb  url\n";
    char line[128];
    for (size_t i = 0; i < results.entries.size(); ++i) {
        const RankedEntry& e = results.entries[i];
        std::snprintf(line, sizeof(line), "%4zu  %4d  %4d  %4d  %4d  %4d  %4d  ", i + 1,
                      e.total_weight, e.counts.meta, e.counts.url, e.counts.title,
                      e.counts.heading, e.counts.body);
        out << line << e.url.text() << '\n';
    }
    if (results.entries.empty()) {
        out << "(no pages above the relevance threshold)\n";
    }
    return out.str();
}

std::string stats_summary(const CrawlStats& stats) {
    std::ostringstream out;
    out << "pages dequeued: " << stats.dequeued << ", fetched ok: " << stats.fetched_ok
        << ", retained: " << stats.retained << "\n"
        << "discarded: below threshold " << stats.below_threshold << ", noindex " << stats.noindex
        << ", not html " << stats.not_html << ", fetch failed " << stats.fetch_failed
        << " (robots denied " << stats.robots_denied << ")\n"
        << "links: extracted " << stats.links_extracted << ", dropped " << stats.links_dropped
        << ", admitted " << stats.frontier_admitted << "\n"
        << "bytes fetched: " << stats.bytes_fetched << ", elapsed: " << stats.elapsed.count()
        << " ms\n";
    return out.str();
}

nlohmann::ordered_json crawl_json(const CrawlConfig& config, const CrawlOutcome& outcome,
                                  std::string_view arm) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["arm"] = std::string(arm);
    doc["query"] = config.query;

    nlohmann::ordered_json weights;
    weights["meta"] = config.weights.meta_weight;
    weights["url"] = config.weights.url_weight;
    weights["title"] = config.weights.title_weight;
    weights["heading"] = config.weights.heading_weight;
    weights["body"] = config.weights.body_weight;
    weights["threshold"] = config.weights.threshold;
    doc["weights"] = weights;

    nlohmann::ordered_json seeds = nlohmann::ordered_json::array();
    for (const auto& seed : config.seeds) seeds.push_back(seed.text());
    doc["seeds"] = seeds;

    nlohmann::ordered_json results = nlohmann::ordered_json::array();
    for (size_t i = 0; i < outcome.results.entries.size(); ++i) {
        const RankedEntry& e = outcome.results.entries[i];
        nlohmann::ordered_json item;
        item["rank"] = i + 1;
        item["url"] = e.url.text();
        item["t"] = e.total_weight;
        item["counts"] = counts_json(e.counts);
        results.push_back(std::move(item));
    }
    doc["results"] = results;

    const CrawlStats& s = outcome.stats;
    nlohmann::ordered_json stats;
    stats["dequeued"] = s.dequeued;
    stats["fetched_ok"] = s.fetched_ok;
    stats["retained"] = s.retained;
    stats["below_threshold"] = s.below_threshold;
    stats["noindex"] = s.noindex;
    stats["not_html"] = s.not_html;
    stats["fetch_failed"] = s.fetch_failed;
    stats["robots_denied"] = s.robots_denied;
    stats["links_extracted"] = s.links_extracted;
    stats["links_dropped"] = s.links_dropped;
    stats["frontier_admitted"] = s.frontier_admitted;
    nlohmann::ordered_json rejected = nlohmann::ordered_json::object();
    for (const auto& [reason, count] : s.frontier_rejected) rejected[reason] = count;
    stats["frontier_rejected"] = rejected;
    stats["bytes_fetched"] = s.bytes_fetched;
    nlohmann::ordered_json histogram = nlohmann::ordered_json::object();
    for (const auto& [depth, count] : s.depth_histogram) histogram[std::to_string(depth)] = count;
    stats["depth_histogram"] = histogram;
    nlohmann::ordered_json per_host = nlohmann::ordered_json::object();
    for (const auto& [host, count] : s.per_host) per_host[host] = count;
    stats["per_host"] = per_host;
    doc["stats"] = stats;

    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& rec : outcome.records) {
        nlohmann::ordered_json item;
        item["sequence"] = rec.sequence;
        item["url"] = rec.url.text();
        item["depth"] = rec.depth;
        if (rec.parent) item["parent"] = rec.parent->text();
        item["fetch_status"] = fetch_status_name(rec.fetch_status);
        item["http_status"] = rec.http_status;
        item["disposition"] = rec.retained() ? "retained" : discard_reason_name(*rec.discarded);
        if (rec.score) {
            item["t"] = rec.score->total_weight;
            item["counts"] = counts_json(rec.score->counts);
        }
        item["links_extracted"] = rec.links_extracted;
        item["links_admitted"] = rec.links_admitted;
        records.push_back(std::move(item));
    }
    doc["records"] = records;
    return doc;
}

std::string comparison_csv(const Comparison& comparison) {
    std::ostringstream out;
    out << "query,arm,retained,true_positives,precision\n";
    for (const auto& row : comparison.rows) {
        out << csv_field(row.query) << ",baseline," << row.baseline.retained << ','
            << row.baseline.true_positives << ',' << fixed(row.baseline.precision) << '\n';
        out << csv_field(row.query) << ",pdd," << row.pdd.retained << ',' << row.pdd.true_positives
            << ',' << fixed(row.pdd.precision) << '\n';
    }
    return out.str();
}

std::string comparison_report(const Comparison& comparison) {
    std::ostringstream out;
    out << "Result comparison: percentage precision per query\n";
    out << "----------------------------------------------------------------------\n";
    out << " #   query                 seed url                    baseline      pdd\n";
    out << "----------------------------------------------------------------------\n";
    char line[256];
    for (size_t i = 0; i < comparison.rows.size(); ++i) {
        const ComparisonRow& row = comparison.rows[i];
        std::string first_seed = row.seeds.empty() ? "" : row.seeds.front();
        std::snprintf(line, sizeof(line), "%2zu   %-20.20s  %-26.26s  %s  %s\n", i + 1,
                      row.query.c_str(), first_seed.c_str(),
                      percent(row.baseline.precision).c_str(), percent(row.pdd.precision).c_str());
        out << line;
        for (size_t k = 1; k < row.seeds.size(); ++k) {
            std::snprintf(line, sizeof(line), "     %-20.20s  %-26.26s\n", "",
                          row.seeds[k].c_str());
            out << line;
        }
    }
    out << "----------------------------------------------------------------------\n";
    return out.str();
}

}  // namespace tagcrawl
