#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include "error.hpp"
#include "text.hpp"

namespace tdalign {

using Score = std::int64_t;

// Token scoring. `max_distance` is the Levenshtein threshold below which a
// non-identical pair still counts as a partial match.
struct MatchParams {
    std::size_t max_distance = 1;
    Score full = 2;
    Score partial = 1;
    Score mismatch = -1;
    Score gap = -1;

    void validate() const {
        if (!(full > partial && partial > mismatch))
            throw ValidationError("match scores must satisfy full > partial > mismatch");
        if (gap >= 0)
            throw ValidationError("gap score must be negative");
    }
};

enum class MatchClass { full, partial, mismatch };

inline MatchClass classify_pair(std::string_view hyp, std::string_view ref, const MatchParams& params) {
    const auto d = levenshtein(hyp, ref);
    if (d == 0)
        return MatchClass::full;
    return d <= params.max_distance ? MatchClass::partial : MatchClass::mismatch;
}

inline Score score_of(MatchClass c, const MatchParams& params) {
    switch (c) {
    case MatchClass::full:
        return params.full;
    case MatchClass::partial:
        return params.partial;
    case MatchClass::mismatch:
        break;
    }
    return params.mismatch;
}

// A lone token can only meet a gap.
inline Score match(std::string_view, const MatchParams& params) { return params.gap; }

inline Score match(std::string_view hyp, std::string_view ref, const MatchParams& params) {
    return score_of(classify_pair(hyp, ref, params), params);
}

inline Score match(std::span<const std::string_view> tokens, const MatchParams& params) {
    if (tokens.size() == 1)
        return match(tokens[0], params);
    if (tokens.size() == 2)
        return match(tokens[0], tokens[1], params);
    throw std::invalid_argument("match takes one or two tokens");
}

}  // namespace tdalign
