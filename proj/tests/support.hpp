#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "tagcrawl/clock.hpp"
#include "tagcrawl/corpus.hpp"
#include "tagcrawl/text.hpp"
#include "tagcrawl/transport.hpp"

namespace tagtest {

inline std::filesystem::path fixtures_dir() {
    return std::filesystem::path(TAGCRAWL_FIXTURES_DIR);
}

// Independent occurrence-count oracle: slides one character at a time and
// skips the match length on a hit. Deliberately not sharing any code with
// count_substring.
inline int naive_count(std::string_view text, std::string_view needle) {
    if (needle.empty()) return 0;
    int count = 0;
    size_t i = 0;
    while (i < text.size()) {
        bool match = i + needle.size() <= text.size();
        for (size_t k = 0; match && k < needle.size(); ++k) {
            if (tagcrawl::ascii_lower(text[i + k]) != tagcrawl::ascii_lower(needle[k])) {
                match = false;
            }
        }
        if (match) {
            ++count;
            i += needle.size();
        } else {
            ++i;
        }
    }
    return count;
}

// Records every URL handed to the wrapped transport.
class SpyTransport final : public tagcrawl::Transport {
public:
    explicit SpyTransport(tagcrawl::Transport& inner) : inner_(inner) {}

    tagcrawl::TransportResponse get(const tagcrawl::CanonicalUrl& url, size_t max_body_bytes) override {
        {
            std::lock_guard<std::mutex> lock(mu_);
            requests_.push_back(url.text());
        }
        return inner_.get(url, max_body_bytes);
    }

    std::vector<std::string> requests() const {
        std::lock_guard<std::mutex> lock(mu_);
        return requests_;
    }

    bool requested(const std::string& url_text) const {
        std::lock_guard<std::mutex> lock(mu_);
        for (const auto& r : requests_) {
            if (r == url_text) return true;
        }
        return false;
    }

private:
    tagcrawl::Transport& inner_;
    mutable std::mutex mu_;
    std::vector<std::string> requests_;
};

// Virtual time: sleep_for advances the clock instead of blocking.
class FakeClock final : public tagcrawl::Clock {
public:
    std::chrono::milliseconds now() override {
        return std::chrono::milliseconds(now_ms_.load());
    }
    void sleep_for(std::chrono::milliseconds d) override {
        if (d.count() > 0) now_ms_ += d.count();
    }

private:
    std::atomic<long long> now_ms_{0};
};

// An endless server: /d/d/d/... pages each link one level deeper, and
// /cycle-a redirects to /cycle-b and back. No crawl can exhaust it.
class InfiniteTrapTransport final : public tagcrawl::Transport {
public:
    tagcrawl::TransportResponse get(const tagcrawl::CanonicalUrl& url, size_t) override {
        tagcrawl::TransportResponse resp;
        resp.outcome = tagcrawl::TransportResponse::Outcome::Ok;
        if (url.path() == "/cycle-a" || url.path() == "/cycle-b") {
            resp.status = 301;
            resp.redirect_target = url.path() == "/cycle-a" ? "/cycle-b" : "/cycle-a";
            return resp;
        }
        resp.status = 200;
        resp.content_type = "text/html";
        std::ostringstream html;
        std::string deeper = (url.path() == "/" ? "" : url.path()) + "/d";
        html << "<html><head><title>deeper</title></head><body>"
             << "<a href=\"" << deeper << "\">down</a>"
             << "<a href=\"/cycle-a\">around</a>"
             << "</body></html>";
        resp.body = html.str();
        return resp;
    }
};

inline tagcrawl::CorpusEntry page_entry(std::string url, std::string html,
                                        std::optional<bool> relevant = std::nullopt) {
    tagcrawl::CorpusEntry entry;
    entry.url = std::move(url);
    entry.body = std::move(html);
    entry.relevant = relevant;
    return entry;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace tagtest
