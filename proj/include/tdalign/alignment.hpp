#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "match.hpp"
#include "scoring_matrix.hpp"
#include "transcript.hpp"

namespace tdalign {

enum class ColumnClass { full, partial, mismatch, gap_hyp, gap_ref };

inline std::string_view to_string(ColumnClass c) {
    switch (c) {
    case ColumnClass::full:
        return "full";
    case ColumnClass::partial:
        return "partial";
    case ColumnClass::mismatch:
        return "mismatch";
    case ColumnClass::gap_hyp:
        return "gap_hyp";
    case ColumnClass::gap_ref:
        break;
    }
    return "gap_ref";
}

inline ColumnClass column_class(MatchClass m) {
    switch (m) {
    case MatchClass::full:
        return ColumnClass::full;
    case MatchClass::partial:
        return ColumnClass::partial;
    case MatchClass::mismatch:
        break;
    }
    return ColumnClass::mismatch;
}

// Position of a token inside reference sequence Y_{speaker+1}.
struct RefSlot {
    std::size_t speaker = 0;
    std::size_t position = 0;

    friend bool operator==(const RefSlot&, const RefSlot&) = default;
};

// One column of the alignment. At most one reference slot is ever filled,
// so the column stores it directly instead of n mostly-empty rows.
struct AlignmentColumn {
    std::optional<std::size_t> hyp;
    std::optional<RefSlot> ref;
    ColumnClass kind = ColumnClass::gap_hyp;
    Score score = 0;

    bool paired() const noexcept { return hyp.has_value() && ref.has_value(); }

    // Entry for alignment row `row` (0 = hypothesis, j = Y_j); nullopt is a gap.
    std::optional<std::size_t> entry(std::size_t row) const noexcept {
        if (row == 0)
            return hyp;
        if (ref && ref->speaker + 1 == row)
            return ref->position;
        return std::nullopt;
    }

    friend bool operator==(const AlignmentColumn&, const AlignmentColumn&) = default;
};

struct AlignmentMatrix {
    SequenceSet sequences;
    std::vector<AlignmentColumn> columns;

    std::size_t rows() const noexcept { return sequences.size(); }
    std::size_t width() const noexcept { return columns.size(); }

    Score score() const noexcept {
        Score s = 0;
        for (const auto& c : columns)
            s += c.score;
        return s;
    }

    const SequenceToken& hyp_token(const AlignmentColumn& c) const { return sequences.hypothesis[*c.hyp]; }
    const SequenceToken& ref_token(const AlignmentColumn& c) const {
        return sequences.references[c.ref->speaker][c.ref->position];
    }

    friend bool operator==(const AlignmentMatrix&, const AlignmentMatrix&) = default;
};

inline AlignmentColumn make_column(const SequenceSet& e, std::optional<std::size_t> hyp, std::optional<RefSlot> ref,
                                   const MatchParams& params) {
    AlignmentColumn c{hyp, ref, ColumnClass::gap_hyp, params.gap};
    if (hyp && ref) {
        const auto m = classify_pair(e.hypothesis[*hyp].text, e.references[ref->speaker][ref->position].text, params);
        c.kind = column_class(m);
        c.score = score_of(m, params);
    } else if (ref) {
        c.kind = ColumnClass::gap_ref;
    }
    return c;
}

// Walks from the last cell back to the origin, taking at every step the
// first maximizing candidate in gap-then-pair order.
inline AlignmentMatrix backtrack(const SequenceSet& e, const ScoringMatrix& f, const MatchParams& params = {}) {
    AlignmentMatrix a{e, {}};
    const auto pairs = [&](std::size_t d, std::size_t i, std::size_t k) {
        return match(e.hypothesis[i].text, e[d][k].text, params);
    };
    IndexTuple psi = f.last_index();

    while (std::any_of(psi.begin(), psi.end(), [](std::size_t v) { return v != 0; })) {
        std::optional<Candidate> best;
        detail::for_each_candidate(psi, f, params.gap, pairs, [&](const Candidate& c) {
            if (!best || c.value > best->value)
                best = c;
        });
        const auto& mv = best->move;
        if (mv.kind == Move::Kind::gap) {
            --psi[mv.dim];
            if (mv.dim == 0)
                a.columns.push_back(make_column(e, psi[0], std::nullopt, params));
            else
                a.columns.push_back(make_column(e, std::nullopt, RefSlot{mv.dim - 1, psi[mv.dim]}, params));
        } else {
            --psi[0];
            --psi[mv.dim];
            a.columns.push_back(make_column(e, psi[0], RefSlot{mv.dim - 1, psi[mv.dim]}, params));
        }
    }
    std::reverse(a.columns.begin(), a.columns.end());
    return a;
}

// Returns a description of the first broken invariant, or nullopt when
// the alignment is well formed: projections recover every sequence in
// order and each column holds a lone token or a hypothesis/reference pair.
inline std::optional<std::string> find_violation(const AlignmentMatrix& a) {
    const auto& e = a.sequences;
    std::size_t next_hyp = 0;
    std::vector<std::size_t> next_ref(e.references.size(), 0);
    for (std::size_t i = 0; i < a.columns.size(); ++i) {
        const auto& c = a.columns[i];
        const auto where = "column " + std::to_string(i) + ": ";
        if (!c.hyp && !c.ref)
            return where + "empty column";
        if (c.hyp) {
            if (*c.hyp != next_hyp)
                return where + "hypothesis token out of order";
            ++next_hyp;
        }
        if (c.ref) {
            if (c.ref->speaker >= e.references.size())
                return where + "unknown reference speaker";
            if (c.ref->position != next_ref[c.ref->speaker])
                return where + "reference token out of order";
            ++next_ref[c.ref->speaker];
        }
    }
    if (next_hyp != e.hypothesis.size())
        return std::string("hypothesis not fully covered");
    for (std::size_t j = 0; j < e.references.size(); ++j)
        if (next_ref[j] != e.references[j].size())
            return "reference speaker " + std::to_string(j) + " not fully covered";
    return std::nullopt;
}

// Global alignment without segmentation.
inline AlignmentMatrix align_sequences(const SequenceSet& e, const MatchParams& params = {},
                                       std::size_t cell_budget = kDefaultCellBudget) {
    return backtrack(e, populate(e, params, cell_budget), params);
}

}  // namespace tdalign
