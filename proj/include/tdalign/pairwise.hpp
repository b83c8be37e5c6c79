#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alignment.hpp"
#include "match.hpp"
#include "text.hpp"

namespace tdalign {

struct PairwiseColumn {
    std::optional<std::size_t> a;
    std::optional<std::size_t> b;
    Score score = 0;
};

struct PairwiseAlignment {
    Score score = 0;
    std::vector<PairwiseColumn> columns;
};

// Classic two-sequence Needleman-Wunsch. `pair(i, j)` scores a[i] against
// b[j]; ties resolve gap-in-b, gap-in-a, then diagonal, the same order the
// multi-sequence backtrack uses.
template <typename PairScore>
PairwiseAlignment pairwise_nw(std::size_t len_a, std::size_t len_b, Score gap, PairScore&& pair) {
    const std::size_t w = len_b + 1;
    std::vector<Score> f((len_a + 1) * w, 0);
    for (std::size_t i = 1; i <= len_a; ++i)
        f[i * w] = f[(i - 1) * w] + gap;
    for (std::size_t j = 1; j <= len_b; ++j)
        f[j] = f[j - 1] + gap;
    for (std::size_t i = 1; i <= len_a; ++i)
        for (std::size_t j = 1; j <= len_b; ++j)
            f[i * w + j] = std::max({f[(i - 1) * w + j] + gap, f[i * w + j - 1] + gap,
                                     f[(i - 1) * w + j - 1] + pair(i - 1, j - 1)});

    PairwiseAlignment out{f[len_a * w + len_b], {}};
    std::size_t i = len_a, j = len_b;
    while (i > 0 || j > 0) {
        const Score here = f[i * w + j];
        if (i > 0 && f[(i - 1) * w + j] + gap == here) {
            --i;
            out.columns.push_back({i, std::nullopt, gap});
        } else if (j > 0 && f[i * w + j - 1] + gap == here) {
            --j;
            out.columns.push_back({std::nullopt, j, gap});
        } else {
            const Score s = pair(i - 1, j - 1);
            --i;
            --j;
            out.columns.push_back({i, j, s});
        }
    }
    std::reverse(out.columns.begin(), out.columns.end());
    return out;
}

// Token-level NW with the multi-sequence match function.
inline PairwiseAlignment pairwise_nw(std::span<const std::string> a, std::span<const std::string> b,
                                     const MatchParams& params = {}) {
    return pairwise_nw(a.size(), b.size(), params.gap,
                       [&](std::size_t i, std::size_t j) { return match(a[i], b[j], params); });
}

// Character-level NW over code points: identical characters score `full`,
// any other pair `mismatch`.
inline PairwiseAlignment pairwise_nw_chars(std::string_view a, std::string_view b, const MatchParams& params = {}) {
    const auto ca = decode_utf8(a);
    const auto cb = decode_utf8(b);
    return pairwise_nw(ca.size(), cb.size(), params.gap,
                       [&](std::size_t i, std::size_t j) { return ca[i] == cb[j] ? params.full : params.mismatch; });
}

// The reference speakers merged back into one stream in document order.
inline std::vector<RefSlot> linearize(const SequenceSet& e) {
    std::vector<RefSlot> slots;
    for (std::size_t j = 0; j < e.references.size(); ++j)
        for (std::size_t k = 0; k < e.references[j].size(); ++k)
            slots.push_back({j, k});
    std::sort(slots.begin(), slots.end(), [&](const RefSlot& x, const RefSlot& y) {
        return e.references[x.speaker][x.position].order < e.references[y.speaker][y.position].order;
    });
    return slots;
}

// Token-level baseline without multi-sequence support: the hypothesis is
// aligned pairwise against the linearized reference.
inline AlignmentMatrix align_linearized(const SequenceSet& e, const MatchParams& params = {}) {
    const auto slots = linearize(e);
    const auto ref_text = [&](std::size_t k) -> const std::string& {
        return e.references[slots[k].speaker][slots[k].position].text;
    };
    const auto pw = pairwise_nw(e.hypothesis.size(), slots.size(), params.gap, [&](std::size_t i, std::size_t k) {
        return match(e.hypothesis[i].text, ref_text(k), params);
    });

    AlignmentMatrix a{e, {}};
    for (const auto& c : pw.columns) {
        std::optional<RefSlot> ref;
        if (c.b)
            ref = slots[*c.b];
        a.columns.push_back(make_column(e, c.a, ref, params));
    }
    return a;
}

}  // namespace tdalign
