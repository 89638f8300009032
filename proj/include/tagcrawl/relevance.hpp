#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tagcrawl/html.hpp"
#include "tagcrawl/url.hpp"

namespace tagcrawl {

// Per-region weights and the relevance threshold. Meta text is worth the
// most, body text the least; a page is kept only when its total weight is
// strictly above the threshold.
struct WeightConfig {
    int meta_weight = 5;
    int url_weight = 4;
    int title_weight = 3;
    int heading_weight = 2;
    int body_weight = 1;
    int threshold = 3;
};

struct OccurrenceCounts {
    int body = 0;
    int title = 0;
    int meta = 0;
    int heading = 0;
    int url = 0;

    friend bool operator==(const OccurrenceCounts& a, const OccurrenceCounts& b) {
        return a.body == b.body && a.title == b.title && a.meta == b.meta &&
               a.heading == b.heading && a.url == b.url;
    }
};

struct PageScore {
    CanonicalUrl url;
    OccurrenceCounts counts;
    int total_weight = 0;
    bool relevant = false;
};

enum class MatchMode {
    Phrase,   // the whole query, whitespace-normalized, as one substring
    AnyTerm,  // occurrences of each whitespace-separated term, summed
};

// Trims and single-space-normalizes the query. Empty result means the query
// was blank and cannot be scored.
std::string normalize_query(std::string_view query);

// Case-insensitive, non-overlapping substring count of `needle` in `text`.
int count_substring(std::string_view text, std::string_view needle);

// Counts query occurrences in each tag region. The query must be non-empty
// after normalization. URL counting runs over the canonical URL text.
OccurrenceCounts count_occurrences(const TagDocument& doc, std::string_view query,
                                   MatchMode mode = MatchMode::Phrase);

// t = Nb*B + Nt*T + Nm*M + Nh*H + Nu*U
int page_weight(const OccurrenceCounts& counts, const WeightConfig& w);

bool is_relevant(int total_weight, const WeightConfig& w);

PageScore score_page(const TagDocument& doc, const CanonicalUrl& url, std::string_view query,
                     const WeightConfig& w, MatchMode mode = MatchMode::Phrase);

}  // namespace tagcrawl
