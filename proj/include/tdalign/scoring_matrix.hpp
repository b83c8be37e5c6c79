#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "match.hpp"
#include "transcript.hpp"

namespace tdalign {

using IndexTuple = std::vector<std::size_t>;

inline constexpr std::size_t kDefaultCellBudget = 500'000'000;

// Dense row-major tensor with one axis per sequence; axis d has extent
// |E_d| + 1. The last axis is contiguous.
class ScoringMatrix {
public:
    ScoringMatrix() = default;

    explicit ScoringMatrix(std::vector<std::size_t> dims) : dims_(std::move(dims)), strides_(dims_.size()) {
        std::size_t stride = 1;
        for (std::size_t d = dims_.size(); d-- > 0;) {
            strides_[d] = stride;
            stride *= dims_[d];
        }
        cells_.assign(stride, 0);
    }

    std::size_t rank() const noexcept { return dims_.size(); }
    std::span<const std::size_t> dims() const noexcept { return dims_; }
    std::span<const std::size_t> strides() const noexcept { return strides_; }
    std::size_t size() const noexcept { return cells_.size(); }
    std::span<const Score> cells() const noexcept { return cells_; }

    std::size_t flat(std::span<const std::size_t> index) const noexcept {
        std::size_t f = 0;
        for (std::size_t d = 0; d < index.size(); ++d)
            f += index[d] * strides_[d];
        return f;
    }

    Score operator[](std::size_t flat_index) const noexcept { return cells_[flat_index]; }
    Score& operator[](std::size_t flat_index) noexcept { return cells_[flat_index]; }

    Score at(std::span<const std::size_t> index) const noexcept { return cells_[flat(index)]; }
    Score& at(std::span<const std::size_t> index) noexcept { return cells_[flat(index)]; }

    // The cell reached after every sequence is consumed.
    IndexTuple last_index() const {
        IndexTuple idx(dims_.size());
        for (std::size_t d = 0; d < dims_.size(); ++d)
            idx[d] = dims_[d] - 1;
        return idx;
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::vector<Score> cells_;
};

// A transition into a cell: either one sequence advances alone against
// gaps, or the hypothesis (dim 0) advances together with one reference dim.
struct Move {
    enum class Kind { gap, pair };
    Kind kind = Kind::gap;
    std::size_t dim = 0;

    friend bool operator==(const Move&, const Move&) = default;
};

struct Candidate {
    Move move;
    std::size_t from = 0;  // flat index of the predecessor
    Score value = 0;
};

namespace detail {

// Enumerates admissible predecessors: gap moves for dims 0..n, then pair
// moves (0,1)..(0,n). This order is also the backtracking tie-break.
template <typename PairScore, typename Visit>
void for_each_candidate(std::span<const std::size_t> psi, const ScoringMatrix& f, Score gap, PairScore&& pair_score,
                        Visit&& visit) {
    const auto strides = f.strides();
    const std::size_t here = f.flat(psi);
    for (std::size_t d = 0; d < psi.size(); ++d)
        if (psi[d] > 0)
            visit(Candidate{{Move::Kind::gap, d}, here - strides[d], f[here - strides[d]] + gap});
    if (psi[0] == 0)
        return;
    for (std::size_t d = 1; d < psi.size(); ++d) {
        if (psi[d] == 0)
            continue;
        const std::size_t from = here - strides[0] - strides[d];
        visit(Candidate{{Move::Kind::pair, d}, from, f[from] + pair_score(d, psi[0] - 1, psi[d] - 1)});
    }
}

// match(x_i, y_dk) for every hypothesis/reference pair, computed once.
class PairScoreTable {
public:
    PairScoreTable(const SequenceSet& e, const MatchParams& params) : width_(e.hypothesis.size()) {
        tables_.resize(e.size());
        for (std::size_t d = 1; d < e.size(); ++d) {
            const auto& y = e[d];
            auto& t = tables_[d];
            t.resize(width_ * y.size());
            for (std::size_t i = 0; i < width_; ++i)
                for (std::size_t k = 0; k < y.size(); ++k)
                    t[i * y.size() + k] = match(e.hypothesis[i].text, y[k].text, params);
        }
        for (std::size_t d = 1; d < e.size(); ++d)
            lengths_.push_back(e[d].size());
    }

    Score operator()(std::size_t dim, std::size_t i, std::size_t k) const noexcept {
        return tables_[dim][i * lengths_[dim - 1] + k];
    }

private:
    std::size_t width_;
    std::vector<std::size_t> lengths_;
    std::vector<std::vector<Score>> tables_;
};

inline std::vector<std::size_t> extents_of(const SequenceSet& e) {
    std::vector<std::size_t> dims;
    dims.reserve(e.size());
    for (std::size_t d = 0; d < e.size(); ++d)
        dims.push_back(e[d].size() + 1);
    return dims;
}

// Visits every index tuple whose non-zero axes are exactly `axes`, each
// ranging over 1..length, in lexicographic order.
template <typename Visit>
void for_each_index(std::span<const std::size_t> axes, std::span<const std::size_t> lengths, IndexTuple& psi,
                    Visit&& visit) {
    for (const auto a : axes)
        if (lengths[a] == 0)
            return;
    std::fill(psi.begin(), psi.end(), 0);
    for (const auto a : axes)
        psi[a] = 1;
    while (true) {
        visit(std::as_const(psi));
        std::size_t k = axes.size();
        while (k-- > 0) {
            const auto a = axes[k];
            if (psi[a] < lengths[a]) {
                ++psi[a];
                break;
            }
            psi[a] = 1;
        }
        if (k == static_cast<std::size_t>(-1))
            return;
    }
}

inline std::vector<std::size_t> axes_of(std::uint64_t mask) {
    std::vector<std::size_t> axes;
    for (std::size_t d = 0; mask != 0; ++d, mask >>= 1)
        if (mask & 1)
            axes.push_back(d);
    return axes;
}

inline std::vector<std::uint64_t> subset_masks(std::size_t reference_count) {
    const std::size_t n = reference_count + 1;
    if (n >= 63)
        throw ValidationError("too many sequences");
    std::vector<std::uint64_t> masks;
    for (std::size_t size = 1; size <= n; ++size)
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m)
            if (static_cast<std::size_t>(std::popcount(m)) == size)
                masks.push_back(m);
    // Within one size, order lexicographically by member list.
    std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        if (std::popcount(a) != std::popcount(b))
            return std::popcount(a) < std::popcount(b);
        return axes_of(a) < axes_of(b);
    });
    return masks;
}

}  // namespace detail

// Non-empty subsets of {0..reference_count}, smallest first. Axis 0 is
// the hypothesis. Cells of a subset depend only on cells of its subsets,
// so filling in this order respects every dependency.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t reference_count) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto m : detail::subset_masks(reference_count))
        out.push_back(detail::axes_of(m));
    return out;
}

// Index tuples that are non-zero exactly on `subset`.
inline std::vector<IndexTuple> index_perm(std::span<const std::size_t> subset, std::span<const std::size_t> lengths) {
    std::vector<IndexTuple> out;
    IndexTuple psi(lengths.size());
    detail::for_each_index(subset, lengths, psi, [&](const IndexTuple& t) { out.push_back(t); });
    return out;
}

inline std::vector<IndexTuple> index_perm(std::span<const std::size_t> subset, const SequenceSet& e) {
    std::vector<std::size_t> lengths;
    for (std::size_t d = 0; d < e.size(); ++d)
        lengths.push_back(e[d].size());
    return index_perm(subset, lengths);
}

// All admissible predecessors of `psi` with their scores (2n'-1 at
// interior cells).
inline std::vector<Candidate> candidates(std::span<const std::size_t> psi, const SequenceSet& e,
                                         const ScoringMatrix& f, const MatchParams& params) {
    std::vector<Candidate> out;
    detail::for_each_candidate(
        psi, f, params.gap,
        [&](std::size_t d, std::size_t i, std::size_t k) { return match(e.hypothesis[i].text, e[d][k].text, params); },
        [&](const Candidate& c) { out.push_back(c); });
    return out;
}

inline Score score_cell(std::span<const std::size_t> psi, const SequenceSet& e, const ScoringMatrix& f,
                        const MatchParams& params) {
    Score best = std::numeric_limits<Score>::min();
    for (const auto& c : candidates(psi, e, f, params))
        best = std::max(best, c.value);
    return best == std::numeric_limits<Score>::min() ? 0 : best;
}

inline std::size_t cell_count(const SequenceSet& e) {
    std::size_t cells = 1;
    for (std::size_t d = 0; d < e.size(); ++d) {
        const std::size_t extent = e[d].size() + 1;
        if (cells > std::numeric_limits<std::size_t>::max() / extent)
            return std::numeric_limits<std::size_t>::max();
        cells *= extent;
    }
    return cells;
}

inline ScoringMatrix populate(const SequenceSet& e, const MatchParams& params = {},
                              std::size_t cell_budget = kDefaultCellBudget) {
    params.validate();
    if (const auto cells = cell_count(e); cells > cell_budget)
        throw BudgetError("scoring matrix needs " + std::to_string(cells) + " cells, budget is " +
                          std::to_string(cell_budget) + "; enable segmentation or raise the budget");

    ScoringMatrix f(detail::extents_of(e));
    const detail::PairScoreTable pairs(e, params);
    std::vector<std::size_t> lengths;
    for (std::size_t d = 0; d < e.size(); ++d)
        lengths.push_back(e[d].size());

    IndexTuple psi(e.size());
    for (const auto mask : detail::subset_masks(e.size() - 1)) {
        const auto axes = detail::axes_of(mask);
        detail::for_each_index(axes, lengths, psi, [&](const IndexTuple& cell) {
            Score best = std::numeric_limits<Score>::min();
            detail::for_each_candidate(cell, f, params.gap, pairs,
                                       [&](const Candidate& c) { best = std::max(best, c.value); });
            f.at(cell) = best;
        });
    }
    return f;
}

}  // namespace tdalign
