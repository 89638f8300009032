#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "tagcrawl/corpus.hpp"
#include "tagcrawl/url.hpp"

namespace tagcrawl {

// Result of a single GET: no redirect following, body reading capped at
// max_body_bytes (truncation flagged, partial bytes discarded upstream).
struct TransportResponse {
    enum class Outcome { Ok, Timeout, Error };

    Outcome outcome = Outcome::Error;
    int status = 0;
    std::string body;
    std::string content_type;
    std::optional<std::string> redirect_target;  // Location header
    bool body_truncated = false;
    std::string error;
};

class Transport {
public:
    virtual ~Transport() = default;
    virtual TransportResponse get(const CanonicalUrl& url, size_t max_body_bytes) = 0;
};

// Serves fetches from an in-memory corpus; never touches the network.
// Lookups are by canonical URL text; a URL absent from the manifest behaves
// like an unreachable host.
class CorpusTransport final : public Transport {
public:
    explicit CorpusTransport(CorpusManifest manifest) : manifest_(std::move(manifest)) {}

    TransportResponse get(const CanonicalUrl& url, size_t max_body_bytes) override;

    const CorpusManifest& manifest() const { return manifest_; }

private:
    CorpusManifest manifest_;
};

// Live HTTP(S) via cpp-httplib. One client per call keeps this stateless and
// thread-safe; the fetcher's politeness gate spaces out same-host requests.
class HttpTransport final : public Transport {
public:
    HttpTransport(std::chrono::milliseconds timeout, std::string user_agent)
        : timeout_(timeout), user_agent_(std::move(user_agent)) {}

    TransportResponse get(const CanonicalUrl& url, size_t max_body_bytes) override;

private:
    std::chrono::milliseconds timeout_;
    std::string user_agent_;
};

}  // namespace tagcrawl
