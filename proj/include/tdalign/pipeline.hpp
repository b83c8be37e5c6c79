#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "json_io.hpp"
#include "metrics.hpp"
#include "segmentation.hpp"
#include "speaker_mapping.hpp"
#include "transcript.hpp"

namespace tdalign {

enum class Metric { wer, wder, tder, df1, der, errors };

inline const std::set<Metric>& all_metrics() {
    static const std::set<Metric> all{Metric::wer, Metric::wder, Metric::tder, Metric::df1, Metric::der,
                                      Metric::errors};
    return all;
}

inline std::string_view to_string(Metric m) {
    switch (m) {
    case Metric::wer:
        return "wer";
    case Metric::wder:
        return "wder";
    case Metric::tder:
        return "tder";
    case Metric::df1:
        return "df1";
    case Metric::der:
        return "der";
    case Metric::errors:
        break;
    }
    return "errors";
}

inline Metric parse_metric(std::string_view name) {
    for (const auto m : all_metrics())
        if (to_string(m) == name)
            return m;
    throw ValidationError("unknown metric '" + std::string(name) + "'");
}

// Comma-separated list, e.g. "wer,tder".
inline std::set<Metric> parse_metric_list(std::string_view csv) {
    std::set<Metric> out;
    std::size_t i = 0;
    while (i <= csv.size()) {
        const auto j = std::min(csv.find(',', i), csv.size());
        if (j > i)
            out.insert(parse_metric(csv.substr(i, j - i)));
        i = j + 1;
    }
    if (out.empty())
        throw ValidationError("metric selection is empty");
    return out;
}

struct RunOptions {
    NormalizationConfig normalization;
    MatchParams match;
    SegmentationConfig segmentation;
    std::set<Metric> metrics = all_metrics();
};

// Overrides taken from a request's "options" object; absent keys keep defaults.
inline RunOptions options_from_json(const nlohmann::json& j) {
    RunOptions o;
    if (j.is_null())
        return o;
    if (!j.is_object())
        throw ParseError("$.options", "expected an object");
    const auto get = [&](const char* key, auto& dst) {
        if (auto it = j.find(key); it != j.end()) {
            try {
                dst = it->get<std::decay_t<decltype(dst)>>();
            } catch (const nlohmann::json::exception&) {
                throw ParseError(std::string("$.options.") + key, "wrong type");
            }
        }
    };
    get("distance", o.match.max_distance);
    get("strip_punctuation", o.normalization.strip_punctuation);
    get("case_fold", o.normalization.case_fold);
    get("segmentation", o.segmentation.enabled);
    get("segment_len", o.segmentation.min_segment_len);
    get("barrier_len", o.segmentation.barrier_len);
    get("cell_budget", o.segmentation.cell_budget);
    if (auto it = j.find("metrics"); it != j.end()) {
        if (!it->is_array())
            throw ParseError("$.options.metrics", "expected an array");
        o.metrics.clear();
        for (const auto& m : *it) {
            if (!m.is_string())
                throw ParseError("$.options.metrics", "expected metric names");
            o.metrics.insert(parse_metric(m.get<std::string>()));
        }
        if (o.metrics.empty())
            throw ValidationError("metric selection is empty");
    }
    return o;
}

struct AlignmentRun {
    AlignmentMatrix alignment;
    std::size_t segments = 1;
};

inline AlignmentRun run_alignment(const Transcript& reference, const Transcript& hypothesis, const RunOptions& o) {
    o.match.validate();
    const auto e = extract_sequences(reference, hypothesis);
    const auto cuts = detect_barriers(e, o.segmentation);
    if (cuts.empty())
        return {align_sequences(e, o.match, o.segmentation.cell_budget), 1};
    return {align_segmented(e, cuts, o.match, o.segmentation.cell_budget), cuts.size() + 1};
}

inline nlohmann::json transcript_stats(const Transcript& t) {
    return {{"tokens", t.token_count()}, {"speakers", t.speakers.size()}, {"utterances", t.utterances.size()}};
}

// Computes the selected metrics. A metric that is undefined for these
// inputs is reported under "undefined" and does not stop the others.
inline nlohmann::json metric_report(const AlignmentRun& run, const SpeakerMapping& m, const Transcript& reference,
                                    const Transcript& hypothesis, const std::set<Metric>& selected) {
    using nlohmann::json;
    const auto& a = run.alignment;
    json report = json::object();
    json undefined = json::object();
    const auto attempt = [&](Metric metric, const std::function<void()>& body) {
        if (!selected.count(metric))
            return;
        try {
            body();
        } catch (const UndefinedMetricError& e) {
            undefined[std::string(to_string(metric))] = e.what();
        }
    };

    attempt(Metric::wer, [&] {
        const auto n = edit_counts(a);
        report["wer"] = wer(a).value();
        report["wer_counts"] = {{"deletions", n.deletions},
                                {"insertions", n.insertions},
                                {"substitutions", n.substitutions},
                                {"reference_tokens", n.reference_tokens}};
        report["wer_linearized"] = wer_linearized(a.sequences).value();
    });
    attempt(Metric::wder, [&] { report["wder"] = wder(a, m).value(); });
    attempt(Metric::tder, [&] {
        const auto t = tder(a, m, reference);
        report["tder"] = t.value();
        report["tder_decomposition"] = {{"E_se", t.e_se()}, {"E_fa", t.e_fa()}, {"E_ms", t.e_ms()}};
    });
    attempt(Metric::df1, [&] {
        const auto d = df1(a, m);
        report["df1"] = {{"precision", d.precision()}, {"recall", d.recall()}, {"f1", d.f1()}, {"matched", d.matched}};
    });
    attempt(Metric::der, [&] {
        const auto d = der(segments_from_timestamps(reference, hypothesis, m));
        report["der"] = d.value();
        report["der_decomposition"] = {{"E_se", d.e_se()}, {"E_fa", d.e_fa()}, {"E_ms", d.e_ms()}};
    });
    attempt(Metric::errors, [&] { report["error_counts"] = to_json(classify_errors(a, reference)); });

    report["alignment_source"] = {{"columns", a.width()}, {"score", a.score()}, {"segments", run.segments}};
    report["undefined"] = std::move(undefined);
    return report;
}

inline nlohmann::json evaluate(const Transcript& reference, const Transcript& hypothesis, const RunOptions& o) {
    const auto run = run_alignment(reference, hypothesis, o);
    const auto mapping = map_speakers(run.alignment);
    return {{"alignment", to_json(run.alignment)},
            {"mapping", to_json(mapping, run.alignment.sequences)},
            {"report", metric_report(run, mapping, reference, hypothesis, o.metrics)},
            {"stats", {{"reference", transcript_stats(reference)}, {"hypothesis", transcript_stats(hypothesis)}}},
            {"transcripts", {{"reference", to_json(reference)}, {"hypothesis", to_json(hypothesis)}}}};
}

// Canonical serialization shared by every front end.
inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace tdalign
