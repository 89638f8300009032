#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace tagcrawl {

enum class UrlError {
    None,
    Malformed,
    UnsupportedScheme,
};

// Normalized absolute http(s) URL. Two URLs that differ only in case of
// scheme/host, presence of a default port, a fragment, or a trailing slash
// on an empty path compare equal. Queries are preserved verbatim.
class CanonicalUrl {
public:
    CanonicalUrl() = default;

    const std::string& scheme() const { return scheme_; }
    const std::string& host() const { return host_; }
    uint16_t port() const { return port_; }
    const std::string& path() const { return path_; }
    const std::optional<std::string>& query() const { return query_; }
    const std::string& original() const { return original_; }

    // Canonical string form: scheme://host[:port]path[?query].
    // Default ports are elided. This is the dedup key and the text the
    // URL-region occurrence count runs over.
    const std::string& text() const { return text_; }

    bool has_default_port() const;
    int path_segment_count() const;
    std::string host_port_key() const;

    friend bool operator==(const CanonicalUrl& a, const CanonicalUrl& b) {
        return a.scheme_ == b.scheme_ && a.host_ == b.host_ && a.port_ == b.port_ &&
               a.path_ == b.path_ && a.query_ == b.query_;
    }
    friend bool operator!=(const CanonicalUrl& a, const CanonicalUrl& b) { return !(a == b); }

private:
    friend std::optional<CanonicalUrl> canonicalize(std::string_view, const CanonicalUrl*, UrlError*);

    std::string scheme_;
    std::string host_;
    uint16_t port_ = 0;
    std::string path_;
    std::optional<std::string> query_;
    std::string original_;
    std::string text_;
};

// Parses and normalizes `raw`, resolving relative references against `base`
// (generic-URI resolution). Fragments are dropped, scheme/host lowercased,
// default ports elided, dot segments removed, percent escapes normalized.
// Returns nullopt on failure; `error` (when given) says why.
std::optional<CanonicalUrl> canonicalize(std::string_view raw,
                                         const CanonicalUrl* base = nullptr,
                                         UrlError* error = nullptr);

}  // namespace tagcrawl

template <>
struct std::hash<tagcrawl::CanonicalUrl> {
    size_t operator()(const tagcrawl::CanonicalUrl& u) const noexcept {
        return std::hash<std::string>{}(u.text());
    }
};
