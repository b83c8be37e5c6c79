#pragma once

#include <json.hpp>

#include "alignment.hpp"
#include "metrics.hpp"
#include "speaker_mapping.hpp"

namespace tdalign {

inline nlohmann::json to_json(const AlignmentMatrix& a) {
    using nlohmann::json;
    json columns = json::array();
    for (const auto& c : a.columns) {
        json hyp = nullptr, ref = nullptr;
        if (c.hyp) {
            const auto& t = a.hyp_token(c);
            hyp = {{"utt", t.utterance}, {"tok", t.token}};
        }
        if (c.ref) {
            const auto& t = a.ref_token(c);
            ref = {{"speaker", a.sequences.reference_speakers[c.ref->speaker]}, {"utt", t.utterance}, {"tok", t.token}};
        }
        columns.push_back({{"hyp", std::move(hyp)}, {"ref", std::move(ref)}, {"class", to_string(c.kind)}});
    }
    return {{"rows", a.rows()}, {"columns", std::move(columns)}};
}

inline nlohmann::json to_json(const SpeakerMapping& m, const SequenceSet& e) {
    nlohmann::json mapped = nlohmann::json::object();
    nlohmann::json unmapped_hyp = nlohmann::json::array(), unmapped_ref = nlohmann::json::array();
    for (std::size_t h = 0; h < m.hyp_to_ref.size(); ++h) {
        if (m.hyp_to_ref[h])
            mapped[e.hypothesis_speakers[h]] = e.reference_speakers[*m.hyp_to_ref[h]];
        else
            unmapped_hyp.push_back(e.hypothesis_speakers[h]);
    }
    for (std::size_t r = 0; r < m.ref_to_hyp.size(); ++r)
        if (!m.ref_to_hyp[r])
            unmapped_ref.push_back(e.reference_speakers[r]);
    return {{"mapped", std::move(mapped)}, {"unmapped_hyp", std::move(unmapped_hyp)},
            {"unmapped_ref", std::move(unmapped_ref)}};
}

inline nlohmann::json to_json(const ErrorCounts& n) {
    const auto pct = [&](std::int64_t c) { return ErrorCounts::percent(c, n.reference_tokens); };
    return {{"MT", n.missing},
            {"ET", n.extra},
            {"ST", n.substitution},
            {"OL", n.overlap},
            {"total", n.total()},
            {"reference_tokens", n.reference_tokens},
            {"percent",
             {{"MT", pct(n.missing)},
              {"ET", pct(n.extra)},
              {"ST", pct(n.substitution)},
              {"OL", pct(n.overlap)},
              {"total", pct(n.total())}}}};
}

}  // namespace tdalign
