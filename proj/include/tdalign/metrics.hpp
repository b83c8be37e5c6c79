#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "alignment.hpp"
#include "error.hpp"
#include "pairwise.hpp"
#include "speaker_mapping.hpp"
#include "text.hpp"
#include "transcript.hpp"

namespace tdalign {

// Rates carry the integer counts they were computed from.
struct Ratio {
    std::int64_t numerator = 0;
    std::int64_t denominator = 0;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

inline Ratio checked_ratio(std::int64_t num, std::int64_t den, const char* metric) {
    if (den == 0)
        throw UndefinedMetricError(std::string(metric) + " is undefined: zero denominator");
    return {num, den};
}

// ---- WER ---------------------------------------------------------------

struct EditCounts {
    std::int64_t deletions = 0;
    std::int64_t insertions = 0;
    std::int64_t substitutions = 0;
    std::int64_t reference_tokens = 0;
};

inline EditCounts edit_counts(const AlignmentMatrix& a) {
    EditCounts n;
    for (const auto& c : a.columns) {
        switch (c.kind) {
        case ColumnClass::gap_ref:
            ++n.deletions;
            break;
        case ColumnClass::gap_hyp:
            ++n.insertions;
            break;
        case ColumnClass::partial:
        case ColumnClass::mismatch:
            ++n.substitutions;
            break;
        case ColumnClass::full:
            break;
        }
    }
    n.reference_tokens = static_cast<std::int64_t>(a.sequences.reference_token_count());
    return n;
}

inline Ratio wer(const AlignmentMatrix& a) {
    const auto n = edit_counts(a);
    return checked_ratio(n.deletions + n.insertions + n.substitutions, n.reference_tokens, "WER");
}

// Minimum edit distance against the linearized reference, for comparison
// with the alignment-derived WER.
inline Ratio wer_linearized(const SequenceSet& e) {
    std::vector<std::string> hyp, ref;
    for (const auto& t : e.hypothesis)
        hyp.push_back(t.text);
    for (const auto& s : linearize(e))
        ref.push_back(e.references[s.speaker][s.position].text);
    return checked_ratio(static_cast<std::int64_t>(edit_distance(hyp, ref)), static_cast<std::int64_t>(ref.size()),
                         "WER");
}

// ---- WDER --------------------------------------------------------------

inline bool speaker_correct(const AlignmentMatrix& a, const AlignmentColumn& c, const SpeakerMapping& m) {
    return c.paired() && m.correct(a.hyp_token(c).speaker, c.ref->speaker);
}

// Over aligned columns only: (U_s + O_s) / (U + O).
inline Ratio wder(const AlignmentMatrix& a, const SpeakerMapping& m) {
    std::int64_t aligned = 0, wrong = 0;
    for (const auto& c : a.columns) {
        if (!c.paired())
            continue;
        ++aligned;
        wrong += speaker_correct(a, c, m) ? 0 : 1;
    }
    return checked_ratio(wrong, aligned, "WDER");
}

// ---- TDER --------------------------------------------------------------

struct UtteranceStats {
    std::size_t utterance = 0;
    std::size_t length = 0;
    std::size_t hyp_speakers = 0;  // N_h
    std::size_t correct = 0;       // N_c
};

inline std::vector<UtteranceStats> utterance_stats(const AlignmentMatrix& a, const SpeakerMapping& m,
                                                   const Transcript& reference) {
    std::vector<std::set<std::size_t>> seen(reference.utterances.size());
    for (const auto& c : a.columns) {
        if (!c.paired())
            continue;
        const auto u = a.ref_token(c).utterance;
        if (u >= seen.size())
            throw ValidationError("alignment does not belong to this reference transcript");
        seen[u].insert(a.hyp_token(c).speaker);
    }

    std::vector<UtteranceStats> out;
    for (std::size_t u = 0; u < reference.utterances.size(); ++u) {
        const auto& utt = reference.utterances[u];
        const auto len = utt.length();
        if (len == 0)
            continue;
        const auto ref_spk = *reference.speaker_index(utt.speaker);
        std::size_t correct = 0;
        for (const auto h : seen[u])
            correct += m.correct(h, ref_spk) ? 1 : 0;
        out.push_back({u, len, seen[u].size(), correct});
    }
    return out;
}

struct TderResult {
    std::int64_t speaker_error = 0;  // numerators; all share `total`
    std::int64_t false_alarm = 0;
    std::int64_t missed = 0;
    std::int64_t total = 0;

    double value() const { return static_cast<double>(speaker_error + false_alarm + missed) / total; }
    double e_se() const { return static_cast<double>(speaker_error) / total; }
    double e_fa() const { return static_cast<double>(false_alarm) / total; }
    double e_ms() const { return static_cast<double>(missed) / total; }
};

// sum len(u)*(max(1,N_h)-N_c) / sum len(u), attributed per utterance to
// speaker error (N_h=1, N_c=0), false alarm (N_h>1) or missed (N_h=0).
inline TderResult tder(const std::vector<UtteranceStats>& stats) {
    TderResult r;
    for (const auto& s : stats) {
        const auto len = static_cast<std::int64_t>(s.length);
        r.total += len;
        const auto nh = static_cast<std::int64_t>(s.hyp_speakers);
        const auto nc = static_cast<std::int64_t>(s.correct);
        const auto mass = len * (std::max<std::int64_t>(1, nh) - nc);
        if (nh == 0)
            r.missed += mass;
        else if (nh == 1)
            r.speaker_error += mass;
        else
            r.false_alarm += mass;
    }
    if (r.total == 0)
        throw UndefinedMetricError("TDER is undefined: reference has no tokens");
    return r;
}

inline TderResult tder(const AlignmentMatrix& a, const SpeakerMapping& m, const Transcript& reference) {
    return tder(utterance_stats(a, m, reference));
}

// ---- DF1 ---------------------------------------------------------------

struct Df1Result {
    std::int64_t matched = 0;
    std::int64_t hypothesis_tokens = 0;
    std::int64_t reference_tokens = 0;

    double precision() const { return static_cast<double>(matched) / hypothesis_tokens; }
    double recall() const { return static_cast<double>(matched) / reference_tokens; }
    double f1() const {
        const double p = precision(), r = recall();
        return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    }
};

inline Df1Result df1(const AlignmentMatrix& a, const SpeakerMapping& m) {
    Df1Result r;
    for (const auto& c : a.columns)
        r.matched += speaker_correct(a, c, m) ? 1 : 0;
    r.hypothesis_tokens = static_cast<std::int64_t>(a.sequences.hypothesis.size());
    r.reference_tokens = static_cast<std::int64_t>(a.sequences.reference_token_count());
    if (r.hypothesis_tokens == 0 || r.reference_tokens == 0)
        throw UndefinedMetricError("DF1 is undefined: empty hypothesis or reference");
    return r;
}

// ---- DER ---------------------------------------------------------------

struct SegmentAnnotation {
    double duration = 0;  // seconds
    int ref_speakers = 0;
    int hyp_speakers = 0;
    int correct = 0;
};

struct DerResult {
    double speaker_error = 0;  // numerators over `total`
    double false_alarm = 0;
    double missed = 0;
    double total = 0;

    double value() const { return (speaker_error + false_alarm + missed) / total; }
    double e_se() const { return speaker_error / total; }
    double e_fa() const { return false_alarm / total; }
    double e_ms() const { return missed / total; }
};

// Segment-annotation DER. Each segment's error dur*(max(N_r,N_h)-N_c)
// splits into dur*|N_h-N_r| (false alarm or missed speech) and
// dur*(min(N_r,N_h)-N_c) (speaker error), over one common denominator.
inline DerResult der(const std::vector<SegmentAnnotation>& segments) {
    DerResult r;
    for (const auto& s : segments) {
        if (!(s.duration > 0))
            throw ValidationError("segment duration must be positive");
        if (s.correct < 0 || s.correct > std::min(s.ref_speakers, s.hyp_speakers))
            throw ValidationError("correct speaker count exceeds min(N_r, N_h)");
        r.total += s.duration * s.ref_speakers;
        r.speaker_error += s.duration * (std::min(s.ref_speakers, s.hyp_speakers) - s.correct);
        if (s.hyp_speakers > s.ref_speakers)
            r.false_alarm += s.duration * (s.hyp_speakers - s.ref_speakers);
        else
            r.missed += s.duration * (s.ref_speakers - s.hyp_speakers);
    }
    if (r.total == 0)
        throw UndefinedMetricError("DER is undefined: no reference speaker time");
    return r;
}

// Elementary time segments between all utterance boundaries, with speaker
// counts from both transcripts. Requires timestamps on every utterance.
inline std::vector<SegmentAnnotation> segments_from_timestamps(const Transcript& reference,
                                                               const Transcript& hypothesis,
                                                               const SpeakerMapping& m) {
    std::vector<std::int64_t> bounds;
    for (const auto* t : {&reference, &hypothesis})
        for (const auto& u : t->utterances) {
            if (!u.timed())
                throw UndefinedMetricError("DER is undefined: utterances without timestamps");
            bounds.push_back(*u.start_ms);
            bounds.push_back(*u.end_ms);
        }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    const auto active = [](const Transcript& t, std::int64_t lo, std::int64_t hi) {
        std::set<std::size_t> spk;
        for (const auto& u : t.utterances)
            if (*u.start_ms <= lo && *u.end_ms >= hi)
                spk.insert(*t.speaker_index(u.speaker));
        return spk;
    };

    std::vector<SegmentAnnotation> out;
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const auto lo = bounds[k], hi = bounds[k + 1];
        const auto ref = active(reference, lo, hi);
        const auto hyp = active(hypothesis, lo, hi);
        if (ref.empty() && hyp.empty())
            continue;
        int correct = 0;
        for (const auto h : hyp)
            if (m.hyp_to_ref[h] && ref.count(*m.hyp_to_ref[h]))
                ++correct;
        out.push_back({static_cast<double>(hi - lo) / 1000.0, static_cast<int>(ref.size()),
                       static_cast<int>(hyp.size()), correct});
    }
    return out;
}

// ---- error taxonomy ----------------------------------------------------

struct ErrorCounts {
    std::int64_t missing = 0;       // MT
    std::int64_t extra = 0;         // ET
    std::int64_t substitution = 0;  // ST
    std::int64_t overlap = 0;       // OL
    std::int64_t reference_tokens = 0;

    std::int64_t total() const { return missing + extra + substitution + overlap; }

    // Percentage of reference tokens, one decimal.
    static double percent(std::int64_t count, std::int64_t base) {
        if (base == 0)
            return 0.0;
        return std::round(1000.0 * static_cast<double>(count) / static_cast<double>(base)) / 10.0;
    }
};

inline ErrorCounts classify_errors(const AlignmentMatrix& a, const Transcript& reference) {
    ErrorCounts n;
    n.reference_tokens = static_cast<std::int64_t>(a.sequences.reference_token_count());
    for (const auto& c : a.columns) {
        switch (c.kind) {
        case ColumnClass::gap_ref: {
            const auto u = a.ref_token(c).utterance;
            if (u >= reference.utterances.size())
                throw ValidationError("alignment does not belong to this reference transcript");
            ++(reference.utterances[u].overlapped() ? n.overlap : n.missing);
            break;
        }
        case ColumnClass::gap_hyp:
            ++n.extra;
            break;
        case ColumnClass::partial:
        case ColumnClass::mismatch:
            ++n.substitution;
            break;
        case ColumnClass::full:
            break;
        }
    }
    return n;
}

// ---- alignment accuracy ------------------------------------------------

// Share of reference tokens whose partner (a hypothesis token or a gap)
// is the same in both alignments.
inline Ratio alignment_accuracy(const AlignmentMatrix& gold, const AlignmentMatrix& predicted) {
    const auto same_texts = [](const Sequence& x, const Sequence& y) {
        return std::equal(x.begin(), x.end(), y.begin(), y.end(),
                          [](const SequenceToken& s, const SequenceToken& t) { return s.text == t.text; });
    };
    const auto& g = gold.sequences;
    const auto& p = predicted.sequences;
    bool same = same_texts(g.hypothesis, p.hypothesis) && g.references.size() == p.references.size();
    for (std::size_t j = 0; same && j < g.references.size(); ++j)
        same = same_texts(g.references[j], p.references[j]);
    if (!same)
        throw ValidationError("alignments are over different sequences");

    const auto partners = [](const AlignmentMatrix& a) {
        std::vector<std::vector<std::optional<std::size_t>>> out;
        for (const auto& y : a.sequences.references)
            out.emplace_back(y.size());
        for (const auto& c : a.columns)
            if (c.ref)
                out[c.ref->speaker][c.ref->position] = c.hyp;
        return out;
    };
    const auto pg = partners(gold);
    const auto pp = partners(predicted);
    std::int64_t agree = 0, total = 0;
    for (std::size_t j = 0; j < pg.size(); ++j)
        for (std::size_t k = 0; k < pg[j].size(); ++k) {
            ++total;
            agree += pg[j][k] == pp[j][k] ? 1 : 0;
        }
    return checked_ratio(agree, total, "alignment accuracy");
}

}  // namespace tdalign
