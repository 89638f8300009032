#include "tagcrawl/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "tagcrawl/text.hpp"

namespace tagcrawl {

namespace {

struct UriRef {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
};

bool is_hex(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return c - 'A' + 10;
}

bool is_unreserved(unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

bool is_pchar(unsigned char c) {
    if (is_unreserved(c)) return true;
    switch (c) {
        case '!': case '$': case '&': case '\'': case '(': case ')':
        case '*': case '+': case ',': case ';': case '=':
        case ':': case '@':
            return true;
        default:
            return false;
    }
}

void append_pct(std::string& out, unsigned char c) {
    static const char* hex = "0123456789ABCDEF";
    out.push_back('%');
    out.push_back(hex[c >> 4]);
    out.push_back(hex[c & 0x0F]);
}

// Uppercases escape hex, decodes unreserved escapes, and percent-encodes
// bytes that are not valid path characters (spaces, non-ASCII, ...).
std::string normalize_path_escapes(std::string_view path) {
    std::string out;
    out.reserve(path.size());
    size_t i = 0;
    while (i < path.size()) {
        unsigned char c = static_cast<unsigned char>(path[i]);
        if (c == '%') {
            if (i + 2 < path.size() && is_hex(path[i + 1]) && is_hex(path[i + 2])) {
                unsigned char v = static_cast<unsigned char>(hex_val(path[i + 1]) * 16 + hex_val(path[i + 2]));
                if (is_unreserved(v)) {
                    out.push_back(static_cast<char>(v));
                } else {
                    append_pct(out, v);
                }
                i += 3;
            } else {
                // stray '%': encode it rather than reject
                append_pct(out, '%');
                i += 1;
            }
        } else if (c == '/') {
            out.push_back('/');
            i += 1;
        } else if (is_pchar(c)) {
            out.push_back(static_cast<char>(c));
            i += 1;
        } else {
            append_pct(out, c);
            i += 1;
        }
    }
    return out;
}

// RFC 3986 §5.2.4
std::string remove_dot_segments(std::string_view path) {
    std::string input(path);
    std::string output;
    while (!input.empty()) {
        if (input.rfind("../", 0) == 0) {
            input.erase(0, 3);
        } else if (input.rfind("./", 0) == 0) {
            input.erase(0, 2);
        } else if (input.rfind("/./", 0) == 0) {
            input.erase(0, 2);  // keep leading '/'
        } else if (input == "/.") {
            input = "/";
        } else if (input.rfind("/../", 0) == 0) {
            input.erase(0, 3);
            size_t pos = output.find_last_of('/');
            output.erase(pos == std::string::npos ? 0 : pos);
        } else if (input == "/..") {
            input = "/";
            size_t pos = output.find_last_of('/');
            output.erase(pos == std::string::npos ? 0 : pos);
        } else if (input == "." || input == "..") {
            input.clear();
        } else {
            size_t start = input[0] == '/' ? 1 : 0;
            size_t next = input.find('/', start);
            size_t take = next == std::string::npos ? input.size() : next;
            output.append(input, 0, take);
            input.erase(0, take);
        }
    }
    return output;
}

bool valid_scheme_token(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '+' || c == '-' || c == '.';
    });
}

// Splits a URI reference into scheme/authority/path/query. Fragment is
// already stripped by the caller.
bool split_uri(std::string_view raw, UriRef& out) {
    size_t pos = 0;
    // scheme
    size_t colon = raw.find(':');
    size_t delim = raw.find_first_of("/?#");
    if (colon != std::string_view::npos && (delim == std::string_view::npos || colon < delim)) {
        std::string_view sch = raw.substr(0, colon);
        if (!valid_scheme_token(sch)) return false;
        out.scheme = ascii_fold(sch);
        pos = colon + 1;
    }
    // authority
    if (raw.substr(pos).rfind("//", 0) == 0) {
        pos += 2;
        size_t end = raw.find_first_of("/?", pos);
        if (end == std::string_view::npos) end = raw.size();
        out.authority = std::string(raw.substr(pos, end - pos));
        pos = end;
    }
    // path + query
    size_t qmark = raw.find('?', pos);
    if (qmark != std::string_view::npos) {
        out.path = std::string(raw.substr(pos, qmark - pos));
        out.query = std::string(raw.substr(qmark + 1));
    } else {
        out.path = std::string(raw.substr(pos));
    }
    return true;
}

// host[:port], with optional userinfo (dropped) and bracketed IPv6.
bool parse_authority(std::string_view auth, std::string& host, std::optional<uint16_t>& port) {
    size_t at = auth.find_last_of('@');
    if (at != std::string_view::npos) auth = auth.substr(at + 1);
    if (auth.empty()) return false;

    std::string_view host_part = auth;
    std::string_view port_part;
    if (auth[0] == '[') {
        size_t close = auth.find(']');
        if (close == std::string_view::npos) return false;
        host_part = auth.substr(0, close + 1);
        std::string_view rest = auth.substr(close + 1);
        if (!rest.empty()) {
            if (rest[0] != ':') return false;
            port_part = rest.substr(1);
        }
    } else {
        size_t colon = auth.find(':');
        if (colon != std::string_view::npos) {
            host_part = auth.substr(0, colon);
            port_part = auth.substr(colon + 1);
        }
    }
    if (host_part.empty()) return false;
    for (char ch : host_part) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (c <= 0x20 || c == '<' || c == '>' || c == '\\' || c == '^' || c == '{' || c == '}' ||
            c == '|' || c == '"' || c >= 0x7F) {
            return false;
        }
    }
    host = ascii_fold(host_part);
    while (!host.empty() && host.back() == '.') host.pop_back();
    if (host.empty()) return false;

    if (!port_part.empty()) {
        uint32_t value = 0;
        for (char c : port_part) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
            value = value * 10 + static_cast<uint32_t>(c - '0');
            if (value > 65535) return false;
        }
        if (value == 0) return false;
        port = static_cast<uint16_t>(value);
    }
    return true;
}

uint16_t default_port_for(const std::string& scheme) {
    return scheme == "https" ? 443 : 80;
}

std::string merge_paths(const std::string& base_path, const std::string& ref_path) {
    size_t slash = base_path.find_last_of('/');
    if (slash == std::string::npos) return "/" + ref_path;
    return base_path.substr(0, slash + 1) + ref_path;
}

void fail(UrlError* error, UrlError code) {
    if (error) *error = code;
}

}  // namespace

bool CanonicalUrl::has_default_port() const {
    return port_ == default_port_for(scheme_);
}

int CanonicalUrl::path_segment_count() const {
    int n = 0;
    for (size_t i = 0; i < path_.size(); ++i) {
        if (path_[i] != '/' && (i == 0 || path_[i - 1] == '/')) ++n;
    }
    return n;
}

std::string CanonicalUrl::host_port_key() const {
    return host_ + ":" + std::to_string(port_);
}

std::optional<CanonicalUrl> canonicalize(std::string_view raw, const CanonicalUrl* base, UrlError* error) {
    fail(error, UrlError::None);
    std::string original(raw);

    // fragments never reach the server
    size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);

    std::string stripped = trim(raw);
    if (stripped.empty()) {
        if (!base) {
            fail(error, UrlError::Malformed);
            return std::nullopt;
        }
        CanonicalUrl self = *base;
        self.original_ = original;
        return self;
    }

    UriRef ref;
    if (!split_uri(stripped, ref)) {
        fail(error, UrlError::Malformed);
        return std::nullopt;
    }

    CanonicalUrl out;
    out.original_ = original;

    if (ref.scheme) {
        if (*ref.scheme != "http" && *ref.scheme != "https") {
            fail(error, UrlError::UnsupportedScheme);
            return std::nullopt;
        }
        if (!ref.authority) {
            // "http:foo" has no authority to crawl
            fail(error, UrlError::Malformed);
            return std::nullopt;
        }
        out.scheme_ = *ref.scheme;
    } else if (base) {
        out.scheme_ = base->scheme_;
    } else {
        fail(error, UrlError::Malformed);
        return std::nullopt;
    }

    std::string path;
    if (ref.authority) {
        std::optional<uint16_t> port;
        if (!parse_authority(*ref.authority, out.host_, port)) {
            fail(error, UrlError::Malformed);
            return std::nullopt;
        }
        out.port_ = port.value_or(default_port_for(out.scheme_));
        path = remove_dot_segments(normalize_path_escapes(ref.path));
        out.query_ = ref.query;
    } else {
        // relative reference against base (RFC 3986 §5.2.2)
        if (!base) {
            fail(error, UrlError::Malformed);
            return std::nullopt;
        }
        out.host_ = base->host_;
        out.port_ = base->port_;
        if (ref.path.empty()) {
            path = base->path_;
            out.query_ = ref.query ? ref.query : base->query_;
        } else {
            std::string merged = ref.path[0] == '/' ? ref.path : merge_paths(base->path_, ref.path);
            path = remove_dot_segments(normalize_path_escapes(merged));
            out.query_ = ref.query;
        }
    }

    if (path.empty()) path = "/";
    if (path[0] != '/') path = "/" + path;
    out.path_ = path;

    out.text_ = out.scheme_ + "://" + out.host_;
    if (!out.has_default_port()) {
        out.text_ += ":" + std::to_string(out.port_);
    }
    out.text_ += out.path_;
    if (out.query_) {
        out.text_ += "?" + *out.query_;
    }
    return out;
}

}  // namespace tagcrawl
