#include "tagcrawl/html.hpp"

#include <array>
#include <cctype>
#include <unordered_map>

#include "tagcrawl/text.hpp"

namespace tagcrawl {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' || c == '_';
}

struct Attr {
    std::string name;   // lowercased
    std::string value;  // entity-decoded
};

struct Tag {
    std::string name;  // lowercased
    std::vector<Attr> attrs;

    const std::string* attr(std::string_view name) const {
        for (const auto& a : attrs) {
            if (a.name == name) return &a.value;
        }
        return nullptr;
    }
};

bool is_heading_name(const std::string& n) {
    return n.size() == 2 && n[0] == 'h' && n[1] >= '1' && n[1] <= '6';
}

const std::unordered_map<std::string_view, uint32_t>& named_entities() {
    static const std::unordered_map<std::string_view, uint32_t> table = {
        {"amp", '&'},    {"lt", '<'},      {"gt", '>'},     {"quot", '"'},
        {"apos", '\''},  {"nbsp", 0xA0},   {"copy", 0xA9},  {"reg", 0xAE},
        {"trade", 0x2122}, {"hellip", 0x2026}, {"mdash", 0x2014}, {"ndash", 0x2013},
        {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"ldquo", 0x201C}, {"rdquo", 0x201D},
        {"laquo", 0xAB}, {"raquo", 0xBB},  {"middot", 0xB7}, {"bull", 0x2022},
        {"deg", 0xB0},   {"sect", 0xA7},   {"para", 0xB6},  {"times", 0xD7},
        {"divide", 0xF7},
    };
    return table;
}

// windows-1252 codepoints for bytes 0x80..0x9F (the rest maps 1:1)
constexpr std::array<uint16_t, 32> kCp1252High = {
    0x20AC, 0x0081, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0x008D, 0x017D, 0x008F,
    0x0090, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0x009D, 0x017E, 0x0178,
};

std::string latin1_to_utf8(std::string_view s) {
    std::string out;
    out.reserve(s.size() + s.size() / 4);
    for (char ch : s) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (c < 0x80) {
            out.push_back(ch);
        } else if (c < 0xA0) {
            append_utf8(out, kCp1252High[c - 0x80]);
        } else {
            append_utf8(out, c);
        }
    }
    return out;
}

bool is_latin1_label(std::string_view label) {
    return equals_ci(label, "iso-8859-1") || equals_ci(label, "latin1") ||
           equals_ci(label, "latin-1") || equals_ci(label, "windows-1252") ||
           equals_ci(label, "cp1252");
}

// Looks for charset=... in the first kilobyte (meta charset / http-equiv).
std::string sniff_charset(std::string_view body) {
    std::string head = ascii_fold(body.substr(0, std::min<size_t>(body.size(), 1024)));
    size_t pos = head.find("charset=");
    if (pos == std::string::npos) return "";
    pos += 8;
    while (pos < head.size() && (head[pos] == '"' || head[pos] == '\'' || is_space(head[pos]))) ++pos;
    size_t end = pos;
    while (end < head.size() && (std::isalnum(static_cast<unsigned char>(head[end])) ||
                                 head[end] == '-' || head[end] == '_')) {
        ++end;
    }
    return head.substr(pos, end - pos);
}

bool looks_binary(std::string_view body) {
    size_t limit = std::min<size_t>(body.size(), 1024);
    for (size_t i = 0; i < limit; ++i) {
        if (body[i] == '\0') return true;
    }
    return false;
}

class Parser {
public:
    explicit Parser(std::string_view input) : s_(input) {}

    TagDocument run(const CanonicalUrl& page_url) {
        doc_.url_text = page_url.text();
        while (pos_ < s_.size()) {
            if (s_[pos_] == '<') {
                handle_markup();
            } else {
                size_t next = s_.find('<', pos_);
                if (next == std::string_view::npos) next = s_.size();
                handle_text(s_.substr(pos_, next - pos_));
                pos_ = next;
            }
        }
        finish_heading();
        doc_.title_text = collapse_whitespace(title_buf_);
        doc_.body_text = collapse_whitespace(body_buf_);
        return doc_;
    }

private:
    void handle_text(std::string_view raw) {
        if (in_head_) return;
        std::string text = decode_entities(raw);
        if (in_heading_) {
            heading_buf_ += text;
        } else {
            body_buf_ += text;
        }
    }

    // pos_ is at '<'; consumes one markup construct (or a literal '<').
    void handle_markup() {
        size_t j = pos_ + 1;
        while (j < s_.size() && is_space(s_[j])) ++j;
        if (j >= s_.size()) {
            handle_text("<");
            pos_ = s_.size();
            return;
        }
        char c = s_[j];
        if (c == '!') {
            skip_declaration(j + 1);
        } else if (c == '?') {
            size_t end = s_.find('>', j);
            pos_ = end == std::string_view::npos ? s_.size() : end + 1;
        } else if (c == '/') {
            size_t k = j + 1;
            while (k < s_.size() && is_space(s_[k])) ++k;
            if (k < s_.size() && std::isalpha(static_cast<unsigned char>(s_[k]))) {
                std::string name = read_name(k);
                size_t end = s_.find('>', k);
                pos_ = end == std::string_view::npos ? s_.size() : end + 1;
                handle_end_tag(name);
            } else {
                handle_text(s_.substr(pos_, 1));
                pos_ += 1;
            }
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            Tag tag = parse_start_tag(j);
            handle_start_tag(tag);
        } else {
            handle_text(s_.substr(pos_, 1));
            pos_ += 1;
        }
    }

    void skip_declaration(size_t at) {
        if (s_.substr(at, 2) == "--") {
            size_t end = s_.find("-->", at + 2);
            pos_ = end == std::string_view::npos ? s_.size() : end + 3;
        } else if (s_.substr(at, 7) == "[CDATA[") {
            size_t end = s_.find("]]>", at + 7);
            pos_ = end == std::string_view::npos ? s_.size() : end + 3;
        } else {
            size_t end = s_.find('>', at);
            pos_ = end == std::string_view::npos ? s_.size() : end + 1;
        }
    }

    std::string read_name(size_t& at) const {
        size_t start = at;
        while (at < s_.size() && is_name_char(s_[at])) ++at;
        return ascii_fold(s_.substr(start, at - start));
    }

    // Parses "<name attr=val ...>"; leaves pos_ past the closing '>'.
    Tag parse_start_tag(size_t at) {
        Tag tag;
        tag.name = read_name(at);
        while (at < s_.size() && s_[at] != '>') {
            if (is_space(s_[at]) || s_[at] == '/') {
                ++at;
                continue;
            }
            size_t name_start = at;
            while (at < s_.size() && !is_space(s_[at]) && s_[at] != '=' && s_[at] != '>' && s_[at] != '/') {
                ++at;
            }
            std::string name = ascii_fold(s_.substr(name_start, at - name_start));
            std::string value;
            while (at < s_.size() && is_space(s_[at])) ++at;
            if (at < s_.size() && s_[at] == '=') {
                ++at;
                while (at < s_.size() && is_space(s_[at])) ++at;
                if (at < s_.size() && (s_[at] == '"' || s_[at] == '\'')) {
                    char quote = s_[at];
                    size_t end = s_.find(quote, at + 1);
                    if (end == std::string_view::npos) end = s_.size();
                    value = decode_entities(s_.substr(at + 1, end - at - 1));
                    at = end < s_.size() ? end + 1 : end;
                } else {
                    size_t start = at;
                    while (at < s_.size() && !is_space(s_[at]) && s_[at] != '>') ++at;
                    value = decode_entities(s_.substr(start, at - start));
                }
            }
            if (!name.empty()) tag.attrs.push_back({std::move(name), std::move(value)});
        }
        pos_ = at < s_.size() ? at + 1 : s_.size();
        return tag;
    }

    void handle_start_tag(const Tag& tag) {
        const std::string& n = tag.name;
        if (n == "head") {
            in_head_ = true;
        } else if (n == "body") {
            in_head_ = false;
        } else if (n == "meta") {
            if (const std::string* content = tag.attr("content")) {
                doc_.meta_texts.push_back(collapse_whitespace(*content));
                const std::string* name = tag.attr("name");
                if (name && equals_ci(*name, "robots")) {
                    RobotsDirectives d = parse_robots_content(*content);
                    doc_.robots_meta.noindex |= d.noindex;
                    doc_.robots_meta.nofollow |= d.nofollow;
                }
            }
        } else if (n == "title") {
            if (!saw_title_) {
                saw_title_ = true;
                title_buf_ = decode_entities(raw_text_until_end_tag("title"));
            } else {
                raw_text_until_end_tag("title");
            }
        } else if (n == "script" || n == "style") {
            raw_text_until_end_tag(n);
        } else if (is_heading_name(n)) {
            finish_heading();
            in_heading_ = true;
            in_head_ = false;
        } else if (n == "a") {
            if (const std::string* href = tag.attr("href")) {
                doc_.outlinks.push_back(*href);
            }
        } else if (in_head_ && (n == "div" || n == "p" || n == "table" || n == "img")) {
            // body content started without a body tag
            in_head_ = false;
        }
    }

    void handle_end_tag(const std::string& name) {
        if (name == "head") {
            in_head_ = false;
        } else if (is_heading_name(name)) {
            finish_heading();
        } else if (name == "body" || name == "html") {
            finish_heading();
        }
    }

    void finish_heading() {
        if (!in_heading_) return;
        doc_.heading_texts.push_back(collapse_whitespace(heading_buf_));
        heading_buf_.clear();
        in_heading_ = false;
    }

    // RCDATA/raw-text scan: consumes up to (and including) the matching end
    // tag, tolerating whitespace inside the brackets; returns the raw text.
    std::string_view raw_text_until_end_tag(std::string_view name) {
        size_t start = pos_;
        size_t i = pos_;
        while (i < s_.size()) {
            if (s_[i] != '<') {
                ++i;
                continue;
            }
            size_t j = i + 1;
            while (j < s_.size() && is_space(s_[j])) ++j;
            if (j < s_.size() && s_[j] == '/') {
                ++j;
                while (j < s_.size() && is_space(s_[j])) ++j;
                if (equals_ci(s_.substr(j, name.size()), name)) {
                    size_t after = j + name.size();
                    if (after >= s_.size() || !is_name_char(s_[after])) {
                        size_t end = s_.find('>', after);
                        pos_ = end == std::string_view::npos ? s_.size() : end + 1;
                        return s_.substr(start, i - start);
                    }
                }
            }
            ++i;
        }
        pos_ = s_.size();
        return s_.substr(start);
    }

    std::string_view s_;
    size_t pos_ = 0;
    TagDocument doc_;
    bool in_head_ = false;
    bool in_heading_ = false;
    bool saw_title_ = false;
    std::string title_buf_;
    std::string heading_buf_;
    std::string body_buf_;
};

}  // namespace

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c != '&') {
            out.push_back(c);
            ++i;
            continue;
        }
        size_t semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back('&');
            ++i;
            continue;
        }
        std::string_view body = s.substr(i + 1, semi - i - 1);
        if (!body.empty() && body[0] == '#') {
            uint64_t cp = 0;
            bool ok = body.size() > 1;
            if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
                for (size_t k = 2; k < body.size() && ok; ++k) {
                    char h = body[k];
                    if (!std::isxdigit(static_cast<unsigned char>(h))) { ok = false; break; }
                    cp = cp * 16 + static_cast<uint64_t>(
                        std::isdigit(static_cast<unsigned char>(h)) ? h - '0'
                                                                    : ascii_lower(h) - 'a' + 10);
                    if (cp > 0x10FFFF) cp = 0x110000;
                }
            } else {
                for (size_t k = 1; k < body.size() && ok; ++k) {
                    if (!std::isdigit(static_cast<unsigned char>(body[k]))) { ok = false; break; }
                    cp = cp * 10 + static_cast<uint64_t>(body[k] - '0');
                    if (cp > 0x10FFFF) cp = 0x110000;
                }
            }
            if (ok) {
                append_utf8(out, (cp == 0 || cp > 0x10FFFF) ? 0xFFFD : static_cast<uint32_t>(cp));
                i = semi + 1;
                continue;
            }
        } else {
            std::string folded = ascii_fold(body);
            auto it = named_entities().find(folded);
            if (it != named_entities().end()) {
                append_utf8(out, it->second);
                i = semi + 1;
                continue;
            }
        }
        out.push_back('&');
        ++i;
    }
    return out;
}

RobotsDirectives parse_robots_content(std::string_view content) {
    RobotsDirectives out;
    size_t start = 0;
    while (start <= content.size()) {
        size_t comma = content.find(',', start);
        size_t end = comma == std::string_view::npos ? content.size() : comma;
        std::string token = ascii_fold(trim(content.substr(start, end - start)));
        if (token == "noindex") {
            out.noindex = true;
        } else if (token == "nofollow") {
            out.nofollow = true;
        } else if (token == "none") {
            out.noindex = true;
            out.nofollow = true;
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<TagDocument> parse_html(std::string_view body, const CanonicalUrl& page_url) {
    if (looks_binary(body)) return std::nullopt;

    std::string decoded;
    std::string charset = sniff_charset(body);
    if (!charset.empty() && is_latin1_label(charset)) {
        decoded = latin1_to_utf8(body);
    } else {
        decoded = utf8_sanitize(body);
    }
    Parser parser(decoded);
    return parser.run(page_url);
}

std::vector<CanonicalUrl> extract_links(const TagDocument& doc, const CanonicalUrl& base, int* dropped) {
    std::vector<CanonicalUrl> out;
    int bad = 0;
    for (const std::string& href : doc.outlinks) {
        auto url = canonicalize(href, &base);
        if (url) {
            out.push_back(std::move(*url));
        } else {
            ++bad;
        }
    }
    if (dropped) *dropped = bad;
    return out;
}

RobotsDirectives robots_directives(const TagDocument& doc) {
    return doc.robots_meta;
}

}  // namespace tagcrawl
