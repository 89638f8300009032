#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagcrawl/url.hpp"

namespace tagcrawl {

struct RobotsDirectives {
    bool noindex = false;
    bool nofollow = false;

    bool any() const { return noindex || nofollow; }
    friend bool operator==(const RobotsDirectives& a, const RobotsDirectives& b) {
        return a.noindex == b.noindex && a.nofollow == b.nofollow;
    }
};

// A page decomposed into the five scoring regions plus outlinks and robots
// meta directives. Region texts are plain text: markup stripped, entities
// decoded, whitespace collapsed. A missing region is an empty string/list.
struct TagDocument {
    std::string url_text;                    // canonical URL of the page, as text
    std::vector<std::string> meta_texts;     // content attribute of every meta that has one
    std::string title_text;
    std::vector<std::string> heading_texts;  // one entry per h1..h6 element
    std::string body_text;                   // visible body text, heading text excluded
    std::vector<std::string> outlinks;       // raw hrefs, document order, duplicates kept
    RobotsDirectives robots_meta;
};

// Tolerant HTML parse: unclosed tags, spaces inside tag brackets, unquoted
// attributes and mixed-case names are all accepted. Returns nullopt only for
// binary input (NotHtml); never fails on text.
std::optional<TagDocument> parse_html(std::string_view body, const CanonicalUrl& page_url);

// Resolves each raw href against `base`, dropping malformed or
// non-http(s) links. Order preserved; `dropped` counts the discards.
std::vector<CanonicalUrl> extract_links(const TagDocument& doc, const CanonicalUrl& base,
                                        int* dropped = nullptr);

RobotsDirectives robots_directives(const TagDocument& doc);

// "noindex, nofollow"-style content attribute value; case-insensitive,
// comma-separated; "none" means both.
RobotsDirectives parse_robots_content(std::string_view content);

// Decodes &amp;-style named and numeric character references.
std::string decode_entities(std::string_view s);

}  // namespace tagcrawl
