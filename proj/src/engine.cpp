#include "tagcrawl/engine.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "tagcrawl/baseline.hpp"
#include "tagcrawl/html.hpp"
#include "tagcrawl/text.hpp"

namespace tagcrawl {

namespace {

enum class Arm { Pdd, Baseline };

bool content_type_is_html(const std::optional<std::string>& content_type) {
    if (!content_type || content_type->empty()) return true;  // header wins only when present
    std::string folded = ascii_fold(*content_type);
    return folded.find("html") != std::string::npos;
}

class CrawlRunner {
public:
    CrawlRunner(const CrawlConfig& config, Transport& transport, Clock* clock, Arm arm)
        : config_(config),
          arm_(arm),
          budget_(config.max_pages > 0 ? static_cast<size_t>(config.max_pages) : 0),
          frontier_(config.guards),
          fetcher_(transport, config.limits, clock) {}

    CrawlOutcome run() {
        auto started = std::chrono::steady_clock::now();
        {
            std::lock_guard<std::mutex> lock(mu_);
            for (const auto& seed : config_.seeds) {
                admit(FrontierEntry{seed, 0, std::nullopt});
            }
        }

        int workers = std::max(1, config_.worker_count);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back([this] { worker_loop(); });
        }
        for (auto& t : pool) t.join();

        return assemble(started);
    }

private:
    struct ProcessResult {
        CrawlRecord record;
        std::vector<CanonicalUrl> links;
        uint64_t bytes = 0;
        size_t dropped_links = 0;
    };

    bool admit(FrontierEntry entry) {
        AdmitResult res = frontier_.enqueue(std::move(entry));
        if (res == AdmitResult::Admitted) {
            ++stats_.frontier_admitted;
            return true;
        }
        ++stats_.frontier_rejected[admit_result_name(res)];
        return false;
    }

    void worker_loop() {
        std::unique_lock<std::mutex> lock(mu_);
        for (;;) {
            cv_.wait(lock, [this] { return stop_ || !frontier_.empty() || in_flight_ == 0; });
            if (stop_) return;
            if (frontier_.empty()) {
                if (in_flight_ == 0) {
                    stop_ = true;
                    cv_.notify_all();
                    return;
                }
                continue;  // someone may still enqueue links
            }
            if (dequeued_ >= budget_) {
                stop_ = true;
                cv_.notify_all();
                return;
            }

            FrontierEntry entry = *frontier_.dequeue();
            size_t sequence = dequeued_++;
            ++in_flight_;
            lock.unlock();

            ProcessResult processed = process(std::move(entry), sequence);

            lock.lock();
            int admitted_here = 0;
            for (auto& link : processed.links) {
                if (admit(FrontierEntry{std::move(link), processed.record.depth + 1,
                                        processed.record.url})) {
                    ++admitted_here;
                }
            }
            processed.record.links_admitted = admitted_here;
            stats_.bytes_fetched += processed.bytes;
            if (processed.record.fetch_status == FetchStatus::RobotsDenied) ++stats_.robots_denied;
            stats_.links_extracted += static_cast<size_t>(processed.record.links_extracted);
            stats_.links_dropped += processed.dropped_links;
            records_.push_back(std::move(processed.record));
            --in_flight_;
            cv_.notify_all();
        }
    }

    ProcessResult process(FrontierEntry entry, size_t sequence) {
        ProcessResult out;
        CrawlRecord& rec = out.record;
        rec.url = entry.url;
        rec.depth = entry.depth;
        rec.parent = std::move(entry.parent);
        rec.sequence = sequence;

        FetchResult fetched = fetcher_.fetch(entry.url);
        rec.fetch_status = fetched.status;
        rec.http_status = fetched.http_status;
        if (fetched.status != FetchStatus::Ok) {
            rec.discarded = DiscardReason::FetchFailed;
            return out;
        }
        out.bytes = fetched.body->size();

        if (!content_type_is_html(fetched.content_type)) {
            rec.discarded = DiscardReason::NotHtml;
            return out;
        }
        auto doc = parse_html(*fetched.body, fetched.url);
        if (!doc) {
            rec.discarded = DiscardReason::NotHtml;
            return out;
        }

        rec.score = score(*doc, entry.url);

        RobotsDirectives directives =
            config_.respect_meta_robots ? doc->robots_meta : RobotsDirectives{};
        if (directives.noindex) {
            rec.discarded = DiscardReason::NoIndex;
        } else if (!rec.score->relevant) {
            rec.discarded = DiscardReason::BelowThreshold;
        }

        rec.links_extracted = static_cast<int>(doc->outlinks.size());
        if (!directives.nofollow) {
            int dropped = 0;
            out.links = extract_links(*doc, fetched.url, &dropped);
            out.dropped_links = static_cast<size_t>(dropped);
        } else {
            rec.links_extracted = 0;  // nofollow: links contribute nothing
        }
        return out;
    }

    PageScore score(const TagDocument& doc, const CanonicalUrl& url) const {
        if (arm_ == Arm::Pdd) {
            return score_page(doc, url, config_.query, config_.weights, config_.match_mode);
        }
        // baseline: query occurrences in the URL text only
        PageScore s;
        s.url = url;
        s.counts.url = count_substring(ascii_fold(doc.url_text), normalize_query(config_.query));
        s.total_weight = s.counts.url;
        s.relevant = s.counts.url > 0;
        return s;
    }

    CrawlOutcome assemble(std::chrono::steady_clock::time_point started) {
        CrawlOutcome outcome;

        std::sort(records_.begin(), records_.end(),
                  [](const CrawlRecord& a, const CrawlRecord& b) { return a.sequence < b.sequence; });

        struct Candidate {
            RankedEntry entry;
            size_t sequence;
        };
        std::vector<Candidate> candidates;
        for (const auto& rec : records_) {
            if (rec.retained() && rec.score) {
                candidates.push_back({{rec.url, rec.score->total_weight, rec.score->counts},
                                      rec.sequence});
            }
        }
        std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
            if (a.entry.total_weight != b.entry.total_weight) {
                return a.entry.total_weight > b.entry.total_weight;
            }
            return a.sequence < b.sequence;  // earlier dequeue first on ties
        });
        for (auto& c : candidates) outcome.results.entries.push_back(std::move(c.entry));

        CrawlStats stats = aggregate_stats(records_);
        stats.dequeued = dequeued_;
        stats.bytes_fetched = stats_.bytes_fetched;
        stats.links_extracted = stats_.links_extracted;
        stats.links_dropped = stats_.links_dropped;
        stats.frontier_admitted = stats_.frontier_admitted;
        stats.frontier_rejected = stats_.frontier_rejected;
        stats.robots_denied = stats_.robots_denied;
        stats.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - started);

        outcome.records = std::move(records_);
        outcome.stats = std::move(stats);
        return outcome;
    }

    const CrawlConfig& config_;
    Arm arm_;
    size_t budget_;
    Frontier frontier_;
    Fetcher fetcher_;

    std::mutex mu_;
    std::condition_variable cv_;
    bool stop_ = false;
    size_t in_flight_ = 0;
    size_t dequeued_ = 0;
    std::vector<CrawlRecord> records_;
    CrawlStats stats_;
};

CrawlOutcome run_crawl(const CrawlConfig& config, Transport& transport, Clock* clock, Arm arm) {
    CrawlRunner runner(config, transport, clock, arm);
    return runner.run();
}

}  // namespace

const char* discard_reason_name(DiscardReason r) {
    switch (r) {
        case DiscardReason::BelowThreshold: return "below_threshold";
        case DiscardReason::NoIndex: return "noindex";
        case DiscardReason::FetchFailed: return "fetch_failed";
        case DiscardReason::NotHtml: return "not_html";
    }
    return "unknown";
}

std::optional<CrawlConfig> validate_inputs(const std::vector<std::string>& seed_strings,
                                           std::string_view query, ValidationError* error) {
    CrawlConfig config;
    for (const auto& raw : seed_strings) {
        auto url = canonicalize(raw);
        if (!url && raw.find("://") == std::string::npos) {
            // bare host convenience: "example.test/x" -> "http://example.test/x"
            url = canonicalize("http://" + raw);
        }
        if (url) config.seeds.push_back(std::move(*url));
    }
    if (config.seeds.empty()) {
        if (error) {
            *error = {ValidationError::Kind::NoValidSeeds, "no valid seed URLs"};
        }
        return std::nullopt;
    }
    config.query = trim(query);
    if (config.query.empty()) {
        if (error) {
            *error = {ValidationError::Kind::EmptyQuery, "query is empty"};
        }
        return std::nullopt;
    }
    return config;
}

CrawlOutcome crawl(const CrawlConfig& config, Transport& transport, Clock* clock) {
    return run_crawl(config, transport, clock, Arm::Pdd);
}

CrawlOutcome baseline_crawl(const CrawlConfig& config, Transport& transport, Clock* clock) {
    return run_crawl(config, transport, clock, Arm::Baseline);
}

CrawlStats aggregate_stats(const std::vector<CrawlRecord>& records) {
    CrawlStats stats;
    for (const auto& rec : records) {
        stats.per_host[rec.url.host()] += 1;
        stats.depth_histogram[rec.depth] += 1;
        if (rec.fetch_status == FetchStatus::Ok) ++stats.fetched_ok;
        if (rec.retained()) {
            ++stats.retained;
            continue;
        }
        switch (*rec.discarded) {
            case DiscardReason::BelowThreshold: ++stats.below_threshold; break;
            case DiscardReason::NoIndex: ++stats.noindex; break;
            case DiscardReason::FetchFailed: ++stats.fetch_failed; break;
            case DiscardReason::NotHtml: ++stats.not_html; break;
        }
    }
    return stats;
}

}  // namespace tagcrawl
