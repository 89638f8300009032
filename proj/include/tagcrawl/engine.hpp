#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tagcrawl/clock.hpp"
#include "tagcrawl/fetcher.hpp"
#include "tagcrawl/frontier.hpp"
#include "tagcrawl/relevance.hpp"
#include "tagcrawl/transport.hpp"
#include "tagcrawl/url.hpp"

namespace tagcrawl {

struct CrawlConfig {
    std::vector<CanonicalUrl> seeds;
    std::string query;
    WeightConfig weights;
    MatchMode match_mode = MatchMode::Phrase;
    int max_pages = 100;  // dequeue budget, counts fetch attempts
    TrapGuardConfig guards;
    int worker_count = 1;
    FetchLimits limits;
    bool respect_meta_robots = true;
};

enum class DiscardReason {
    BelowThreshold,
    NoIndex,
    FetchFailed,
    NotHtml,
};

const char* discard_reason_name(DiscardReason r);

// Audit record for every dequeued URL. Disposition is either a retained
// relevant score or a discard reason, never both.
struct CrawlRecord {
    CanonicalUrl url;
    int depth = 0;
    std::optional<CanonicalUrl> parent;
    size_t sequence = 0;  // dequeue order
    FetchStatus fetch_status = FetchStatus::TransportError;
    int http_status = 0;
    std::optional<PageScore> score;
    std::optional<DiscardReason> discarded;
    int links_extracted = 0;
    int links_admitted = 0;

    bool retained() const { return !discarded.has_value(); }
};

struct RankedEntry {
    CanonicalUrl url;
    int total_weight = 0;
    OccurrenceCounts counts;
};

// Entries sorted by total weight, strictly non-increasing; ties keep
// dequeue order. Every entry cleared the threshold and lacks noindex.
struct RankedResults {
    std::vector<RankedEntry> entries;
};

struct CrawlStats {
    size_t dequeued = 0;
    size_t fetched_ok = 0;
    size_t retained = 0;
    size_t below_threshold = 0;
    size_t noindex = 0;
    size_t not_html = 0;
    size_t fetch_failed = 0;
    size_t robots_denied = 0;
    size_t links_extracted = 0;
    size_t links_dropped = 0;
    size_t frontier_admitted = 0;
    std::map<std::string, size_t> frontier_rejected;  // reason -> count
    uint64_t bytes_fetched = 0;
    std::map<std::string, size_t> per_host;
    std::map<int, size_t> depth_histogram;
    std::chrono::milliseconds elapsed{0};
};

struct CrawlOutcome {
    RankedResults results;
    std::vector<CrawlRecord> records;
    CrawlStats stats;
};

struct ValidationError {
    enum class Kind { NoValidSeeds, EmptyQuery };
    Kind kind = Kind::NoValidSeeds;
    std::string message;
};

// Canonicalizes seeds (retrying with an http:// prefix for bare hosts) and
// trims the query. Limits and weights keep their defaults.
std::optional<CrawlConfig> validate_inputs(const std::vector<std::string>& seed_strings,
                                           std::string_view query,
                                           ValidationError* error = nullptr);

// BFS crawl: dequeue, fetch, parse, score, keep-or-discard, extract links,
// enqueue; stops when the frontier drains or max_pages URLs were dequeued.
CrawlOutcome crawl(const CrawlConfig& config, Transport& transport, Clock* clock = nullptr);

// Disposition counts, per-host totals and the depth histogram derivable
// from the records alone.
CrawlStats aggregate_stats(const std::vector<CrawlRecord>& records);

}  // namespace tagcrawl
