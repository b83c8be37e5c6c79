#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

namespace tdalign {

struct NormalizationConfig {
    bool strip_punctuation = true;
    bool case_fold = true;
};

namespace detail {

inline bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

inline bool is_punct_byte(unsigned char c) {
    return c < 0x80 && std::ispunct(c);
}

}  // namespace detail

// Decodes UTF-8 into code points. Malformed sequences decode byte-wise so
// that distance computations never fail on dirty input.
inline std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        bool ok = len != 0 && i + len <= s.size();
        for (std::size_t k = 1; ok && k < len; ++k)
            ok = (static_cast<unsigned char>(s[i + k]) >> 6) == 0x2;
        if (!ok) {
            out.push_back(c);
            ++i;
            continue;
        }
        char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
        for (std::size_t k = 1; k < len; ++k)
            cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        out.push_back(cp);
        i += len;
    }
    return out;
}

// Strips punctuation and folds case. Apostrophes and hyphens survive only
// between two word characters ("you're", "well-known"). An empty result
// means the token is dropped from alignment sequences.
inline std::string normalize(std::string_view surface, const NormalizationConfig& config = {}) {
    std::string out;
    out.reserve(surface.size());
    for (std::size_t i = 0; i < surface.size(); ++i) {
        const auto c = static_cast<unsigned char>(surface[i]);
        if (config.strip_punctuation && detail::is_punct_byte(c)) {
            const bool joiner = c == '\'' || c == '-';
            const bool inside = i > 0 && i + 1 < surface.size() &&
                                detail::is_word_byte(static_cast<unsigned char>(surface[i - 1])) &&
                                detail::is_word_byte(static_cast<unsigned char>(surface[i + 1]));
            if (!(joiner && inside))
                continue;
        }
        out.push_back(config.case_fold && c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    }
    return out;
}

// Splits on runs of whitespace.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        if (j > i)
            tokens.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return tokens;
}

// Unit-cost edit distance over any random-access range.
template <typename Seq>
std::size_t edit_distance(const Seq& a, const Seq& b) {
    if (a.size() < b.size())
        return edit_distance(b, a);
    std::vector<std::size_t> row(b.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

// Levenshtein distance over Unicode code points.
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a == b)
        return 0;
    return edit_distance(decode_utf8(a), decode_utf8(b));
}

}  // namespace tdalign
