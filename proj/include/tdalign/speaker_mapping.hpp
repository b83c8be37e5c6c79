#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "alignment.hpp"

namespace tdalign {

// Square cost matrix: rows are hypothesis speakers, columns reference
// speakers, padded with zero-cost dummies. Real cells hold the negated
// number of columns pairing the two speakers.
struct CostMatrix {
    std::size_t hyp_speakers = 0;
    std::size_t ref_speakers = 0;
    std::vector<std::vector<std::int64_t>> cost;

    std::size_t size() const noexcept { return cost.size(); }
};

struct SpeakerMapping {
    std::vector<std::optional<std::size_t>> hyp_to_ref;  // indexed by hypothesis speaker
    std::vector<std::optional<std::size_t>> ref_to_hyp;  // indexed by reference speaker

    bool correct(std::size_t hyp_speaker, std::size_t ref_speaker) const {
        return hyp_to_ref[hyp_speaker] == ref_speaker;
    }
};

inline CostMatrix make_cost_matrix(std::vector<std::vector<std::int64_t>> real, std::size_t hyp_speakers,
                                   std::size_t ref_speakers) {
    const std::size_t n = std::max(hyp_speakers, ref_speakers);
    CostMatrix m{hyp_speakers, ref_speakers, std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n, 0))};
    for (std::size_t h = 0; h < hyp_speakers; ++h)
        for (std::size_t r = 0; r < ref_speakers; ++r)
            m.cost[h][r] = real[h][r];
    return m;
}

inline CostMatrix build_cost_matrix(const AlignmentMatrix& a) {
    const auto hs = a.sequences.hypothesis_speakers.size();
    const auto rs = a.sequences.reference_speakers.size();
    std::vector<std::vector<std::int64_t>> real(hs, std::vector<std::int64_t>(rs, 0));
    for (const auto& c : a.columns)
        if (c.paired())
            --real[a.hyp_token(c).speaker][c.ref->speaker];
    return make_cost_matrix(std::move(real), hs, rs);
}

namespace detail {

// Minimum-cost perfect matching on a square matrix (shortest augmenting
// paths with potentials, O(n^3)). Returns the column assigned to each row.
inline std::vector<std::size_t> solve_assignment(const std::vector<std::vector<std::int64_t>>& cost) {
    const std::size_t n = cost.size();
    constexpr auto inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<std::int64_t> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            std::int64_t delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const std::int64_t cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j)
        if (p[j] != 0)
            row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

inline std::int64_t assignment_cost(const std::vector<std::vector<std::int64_t>>& cost) {
    if (cost.empty())
        return 0;
    const auto cols = solve_assignment(cost);
    std::int64_t total = 0;
    for (std::size_t r = 0; r < cost.size(); ++r)
        total += cost[r][cols[r]];
    return total;
}

inline std::vector<std::vector<std::int64_t>> without(const std::vector<std::vector<std::int64_t>>& cost,
                                                    std::size_t row, std::size_t col) {
    std::vector<std::vector<std::int64_t>> out;
    for (std::size_t r = 0; r < cost.size(); ++r) {
        if (r == row)
            continue;
        auto& line = out.emplace_back();
        for (std::size_t c = 0; c < cost.size(); ++c)
            if (c != col)
                line.push_back(cost[r][c]);
    }
    return out;
}

}  // namespace detail

// Optimal assignment; among optimal assignments the lexicographically
// smallest column sequence (row 0 first) is returned.
inline std::vector<std::size_t> optimal_assignment(const std::vector<std::vector<std::int64_t>>& cost) {
    const std::size_t n = cost.size();
    std::vector<std::size_t> result(n);
    std::vector<std::size_t> cols(n);
    for (std::size_t c = 0; c < n; ++c)
        cols[c] = c;

    auto rest = cost;
    for (std::size_t r = 0; r < n; ++r) {
        const auto target = detail::assignment_cost(rest);
        for (std::size_t k = 0; k < rest.size(); ++k) {
            auto sub = detail::without(rest, 0, k);
            if (rest[0][k] + detail::assignment_cost(sub) == target) {
                result[r] = cols[k];
                cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
                rest = std::move(sub);
                break;
            }
        }
    }
    return result;
}

inline SpeakerMapping hungarian(const CostMatrix& m) {
    SpeakerMapping out;
    out.hyp_to_ref.assign(m.hyp_speakers, std::nullopt);
    out.ref_to_hyp.assign(m.ref_speakers, std::nullopt);
    const auto cols = optimal_assignment(m.cost);
    for (std::size_t h = 0; h < m.hyp_speakers; ++h)
        if (cols[h] < m.ref_speakers) {
            out.hyp_to_ref[h] = cols[h];
            out.ref_to_hyp[cols[h]] = h;
        }
    return out;
}

inline SpeakerMapping map_speakers(const AlignmentMatrix& a) { return hungarian(build_cost_matrix(a)); }

}  // namespace tdalign
