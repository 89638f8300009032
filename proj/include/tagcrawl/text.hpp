#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tagcrawl {

// ASCII-only case folding. Multi-byte UTF-8 sequences pass through unchanged,
// so non-ASCII text matches exactly (byte-wise).
inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string ascii_fold(std::string_view s);

std::string trim(std::string_view s);

// Collapses runs of whitespace (ASCII whitespace plus U+00A0) to a single
// space and trims the ends. All tag-region text goes through this before
// occurrence counting.
std::string collapse_whitespace(std::string_view s);

bool equals_ci(std::string_view a, std::string_view b);
bool starts_with_ci(std::string_view s, std::string_view prefix);

// Replaces invalid UTF-8 byte sequences with U+FFFD.
std::string utf8_sanitize(std::string_view s);

void append_utf8(std::string& out, uint32_t cp);

}  // namespace tagcrawl
