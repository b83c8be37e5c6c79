#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "alignment.hpp"
#include "error.hpp"
#include "scoring_matrix.hpp"
#include "transcript.hpp"

namespace tdalign {

struct SegmentationConfig {
    bool enabled = true;
    std::size_t barrier_len = 3;       // anchors per barrier
    std::size_t min_segment_len = 30;  // hypothesis tokens per segment
    std::size_t cell_budget = kDefaultCellBudget;

    void validate() const {
        if (barrier_len < 1)
            throw ValidationError("barrier length must be at least 1");
        if (min_segment_len < barrier_len)
            throw ValidationError("minimum segment length must be at least the barrier length");
    }
};

// A split point. Segment k covers hypothesis [prev.hyp, hyp) and, for each
// reference speaker j, Y_j[prev.ref[j], ref[j]).
struct Cut {
    std::size_t hyp = 0;
    std::vector<std::size_t> ref;

    friend bool operator==(const Cut&, const Cut&) = default;
};

namespace detail {

// A token that occurs exactly once in X and exactly once across all Y_j.
struct Anchor {
    std::size_t hyp;
    std::size_t speaker;
    std::size_t position;
    std::size_t order;  // linearized reference position
};

inline std::vector<Anchor> find_anchors(const SequenceSet& e) {
    std::unordered_map<std::string_view, std::size_t> hyp_count, ref_count;
    std::unordered_map<std::string_view, RefSlot> ref_slot;
    for (const auto& t : e.hypothesis)
        ++hyp_count[t.text];
    for (std::size_t j = 0; j < e.references.size(); ++j)
        for (std::size_t k = 0; k < e.references[j].size(); ++k) {
            const auto& text = e.references[j][k].text;
            if (++ref_count[text] == 1)
                ref_slot[text] = {j, k};
        }

    std::vector<Anchor> anchors;
    for (std::size_t i = 0; i < e.hypothesis.size(); ++i) {
        const std::string_view text = e.hypothesis[i].text;
        if (hyp_count[text] != 1)
            continue;
        auto it = ref_count.find(text);
        if (it == ref_count.end() || it->second != 1)
            continue;
        const auto slot = ref_slot[text];
        anchors.push_back({i, slot.speaker, slot.position, e.references[slot.speaker][slot.position].order});
    }
    return anchors;
}

// Longest subsequence (anchors already sorted by hypothesis position) with
// strictly increasing reference order. Patience sorting, O(k log k).
inline std::vector<Anchor> longest_chain(const std::vector<Anchor>& anchors) {
    std::vector<std::size_t> tails;  // index of smallest tail for each length
    std::vector<std::size_t> parent(anchors.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        auto pos = std::lower_bound(tails.begin(), tails.end(), anchors[i].order,
                                    [&](std::size_t t, std::size_t v) { return anchors[t].order < v; });
        const auto len = static_cast<std::size_t>(pos - tails.begin());
        if (len > 0)
            parent[i] = tails[len - 1];
        if (pos == tails.end())
            tails.push_back(i);
        else
            *pos = i;
    }
    std::vector<Anchor> chain;
    if (tails.empty())
        return chain;
    for (std::size_t i = tails.back(); i != static_cast<std::size_t>(-1); i = parent[i])
        chain.push_back(anchors[i]);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

inline Cut cut_at(const SequenceSet& e, const Anchor& a) {
    Cut c{a.hyp, {}};
    for (const auto& y : e.references) {
        const auto it = std::lower_bound(y.begin(), y.end(), a.order,
                                         [](const SequenceToken& t, std::size_t order) { return t.order < order; });
        c.ref.push_back(static_cast<std::size_t>(it - y.begin()));
    }
    return c;
}

}  // namespace detail

// Barriers are windows of `barrier_len` chain anchors that are adjacent in
// both X and a single Y_j. Each window proposes a cut at its middle anchor;
// cuts are kept left to right only while every segment keeps at least
// `min_segment_len` hypothesis tokens.
inline std::vector<Cut> detect_barriers(const SequenceSet& e, const SegmentationConfig& cfg) {
    if (!cfg.enabled)
        return {};
    cfg.validate();
    const auto chain = detail::longest_chain(detail::find_anchors(e));

    std::vector<detail::Anchor> proposals;
    std::size_t run_start = 0;
    for (std::size_t i = 0; i <= chain.size(); ++i) {
        const bool adjacent = i > 0 && i < chain.size() && chain[i].hyp == chain[i - 1].hyp + 1 &&
                              chain[i].speaker == chain[i - 1].speaker &&
                              chain[i].position == chain[i - 1].position + 1;
        if (adjacent)
            continue;
        // chain[run_start, i) is a maximal run; split it into full windows.
        for (std::size_t w = run_start; w + cfg.barrier_len <= i; w += cfg.barrier_len)
            proposals.push_back(chain[w + cfg.barrier_len / 2]);
        run_start = i;
    }

    std::vector<Cut> cuts;
    std::size_t prev = 0;
    const std::size_t total = e.hypothesis.size();
    for (const auto& p : proposals) {
        if (p.hyp - prev < cfg.min_segment_len || total - p.hyp < cfg.min_segment_len)
            continue;
        cuts.push_back(detail::cut_at(e, p));
        prev = p.hyp;
    }
    return cuts;
}

// The part of `e` between two cuts, with positions rebased to zero.
inline SequenceSet slice(const SequenceSet& e, const Cut& from, const Cut& to) {
    SequenceSet s;
    s.hypothesis_speakers = e.hypothesis_speakers;
    s.reference_speakers = e.reference_speakers;
    s.hypothesis.assign(e.hypothesis.begin() + static_cast<std::ptrdiff_t>(from.hyp),
                        e.hypothesis.begin() + static_cast<std::ptrdiff_t>(to.hyp));
    for (std::size_t j = 0; j < e.references.size(); ++j)
        s.references.emplace_back(e.references[j].begin() + static_cast<std::ptrdiff_t>(from.ref[j]),
                                  e.references[j].begin() + static_cast<std::ptrdiff_t>(to.ref[j]));
    return s;
}

// Aligns each segment independently and concatenates the columns.
inline AlignmentMatrix align_segmented(const SequenceSet& e, const std::vector<Cut>& cuts,
                                       const MatchParams& params, std::size_t cell_budget) {
    Cut begin{0, std::vector<std::size_t>(e.references.size(), 0)};
    Cut end{e.hypothesis.size(), {}};
    for (const auto& y : e.references)
        end.ref.push_back(y.size());

    std::vector<Cut> bounds{begin};
    bounds.insert(bounds.end(), cuts.begin(), cuts.end());
    bounds.push_back(end);

    AlignmentMatrix out{e, {}};
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        const auto& lo = bounds[s];
        auto part = align_sequences(slice(e, lo, bounds[s + 1]), params, cell_budget);
        for (auto c : part.columns) {
            if (c.hyp)
                *c.hyp += lo.hyp;
            if (c.ref)
                c.ref->position += lo.ref[c.ref->speaker];
            out.columns.push_back(c);
        }
    }
    return out;
}

inline AlignmentMatrix align(const SequenceSet& e, const MatchParams& params = {},
                             const SegmentationConfig& cfg = {}) {
    params.validate();
    const auto cuts = detect_barriers(e, cfg);
    if (cuts.empty())
        return align_sequences(e, params, cfg.cell_budget);
    return align_segmented(e, cuts, params, cfg.cell_budget);
}

inline AlignmentMatrix align(const Transcript& reference, const Transcript& hypothesis, const MatchParams& params = {},
                             const SegmentationConfig& cfg = {}) {
    return align(extract_sequences(reference, hypothesis), params, cfg);
}

}  // namespace tdalign
