#pragma once

#include <chrono>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tagcrawl/clock.hpp"
#include "tagcrawl/transport.hpp"
#include "tagcrawl/url.hpp"

namespace tagcrawl {

enum class FetchStatus {
    Ok,
    HttpError,
    Timeout,
    TooLarge,
    RobotsDenied,
    TransportError,
};

const char* fetch_status_name(FetchStatus s);

struct FetchResult {
    CanonicalUrl url;  // final URL after redirects
    FetchStatus status = FetchStatus::TransportError;
    int http_status = 0;
    std::optional<std::string> body;  // present iff status == Ok
    std::optional<std::string> content_type;
    std::chrono::system_clock::time_point fetched_at;
};

// Parsed robots.txt rules applicable to one host for our user agent.
struct RobotsPolicy {
    std::string host;  // host:port key
    std::vector<std::string> disallow_prefixes;
    bool fetched = false;  // robots.txt was actually retrieved and parsed

    bool allows(std::string_view path) const;
};

// Rules from the agent sections matching `user_agent` (or the * sections
// when none match). Only Disallow prefixes participate.
RobotsPolicy parse_robots_txt(std::string_view body, std::string_view user_agent,
                              std::string host_key);

struct FetchLimits {
    size_t max_body_bytes = 2 * 1024 * 1024;
    std::chrono::milliseconds timeout{10000};
    int max_redirects = 5;
    std::chrono::milliseconds min_delay{500};
    std::string user_agent = "tagcrawl/1.0";
    bool respect_robots_txt = true;
};

// Downloads pages through a pluggable transport, enforcing robots.txt, a
// per-host politeness gap, redirect and size limits. Shared by all fetch
// workers; the robots cache and politeness ledger are thread-safe.
class Fetcher {
public:
    Fetcher(Transport& transport, FetchLimits limits, Clock* clock = nullptr)
        : transport_(transport), limits_(std::move(limits)),
          clock_(clock ? clock : &SteadyClock::instance()) {}

    // Never throws for remote failures; the outcome is in FetchResult.status.
    FetchResult fetch(const CanonicalUrl& url);

    // Cached per host per crawl; fetch failure degrades to allow-all.
    RobotsPolicy consult_robots(const CanonicalUrl& url);

    // Blocks until at least min_delay has passed since the previous request
    // start to this host; returns the time waited.
    std::chrono::milliseconds politeness_wait(const std::string& host_key);

    const FetchLimits& limits() const { return limits_; }

private:
    TransportResponse issue(const CanonicalUrl& url);

    Transport& transport_;
    FetchLimits limits_;
    Clock* clock_;

    std::mutex robots_mu_;
    std::unordered_map<std::string, RobotsPolicy> robots_cache_;

    std::mutex politeness_mu_;
    std::unordered_map<std::string, std::chrono::milliseconds> next_start_;
};

}  // namespace tagcrawl
