// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <tdalign/tdalign.hpp>

#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "support/working_example.hpp"

namespace {

using namespace tdalign;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok)
        ++failures;
    std::printf("%s  %-22s %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
}

Outcome golden() {
    const auto t0 = Clock::now();
    const auto e = extract_sequences(testing::working_reference(), testing::working_hypothesis());
    const auto f = populate(e);
    const auto a = backtrack(e, f);
    const double elapsed = seconds_since(t0);

    int cells = 0, wrong = 0;
    for (std::size_t z = 0; z < 3; ++z)
        for (std::size_t y = 0; y < 8; ++y)
            for (std::size_t x = 0; x < 9; ++x) {
                ++cells;
                wrong += f.at(IndexTuple{x, y, z}) == testing::kScoringTables[z][y][x] ? 0 : 1;
            }

    // The highlighted cells are the backtracking path, origin excluded.
    const std::vector<std::pair<IndexTuple, Score>> highlighted{
        {{1, 1, 0}, 2}, {{2, 2, 0}, 1},  {{3, 3, 0}, 3},  {{4, 4, 0}, 5},  {{5, 5, 0}, 7},
        {{6, 5, 1}, 9}, {{7, 5, 2}, 11}, {{7, 6, 2}, 10}, {{8, 7, 2}, 12},
    };
    bool highlights = true;
    for (const auto& [cell, v] : highlighted)
        highlights = highlights && f.at(cell) == v;

    IndexTuple psi{e[0].size(), e[1].size(), e[2].size()};
    bool walk = a.columns.size() + 1 == testing::kWalk.size();
    for (std::size_t s = 0; walk && s < testing::kWalk.size(); ++s) {
        for (std::size_t d = 0; d < 3; ++d)
            walk = walk && psi[d] == static_cast<std::size_t>(testing::kWalk[s][d]);
        if (s + 1 < testing::kWalk.size()) {
            const auto& c = a.columns[a.columns.size() - 1 - s];
            if (c.hyp)
                --psi[0];
            if (c.ref)
                --psi[c.ref->speaker + 1];
        }
    }

    bool matrix = a.columns.size() == testing::kAlignment.size();
    for (std::size_t i = 0; matrix && i < a.columns.size(); ++i) {
        const auto& want = testing::kAlignment[i];
        const auto& got = a.columns[i];
        matrix = (want.hyp < 0 ? !got.hyp : got.hyp == static_cast<std::size_t>(want.hyp)) && got.ref &&
                 got.ref->speaker + 1 == static_cast<std::size_t>(want.ref_dim) &&
                 got.ref->position == static_cast<std::size_t>(want.ref_pos);
    }

    char buf[200];
    std::snprintf(buf, sizeof buf, "cells %d/%d, highlights %s, walkthrough %s, alignment %s, %.3fs",
                  cells - wrong, cells, highlights ? "ok" : "BAD", walk ? "ok" : "BAD", matrix ? "ok" : "BAD",
                  elapsed);
    return {wrong == 0 && cells == 216 && highlights && walk && matrix && elapsed < 1.0, buf};
}

Outcome oracle_optimality() {
    std::mt19937 rng(1001);
    const MatchParams p;
    int n = 0, bad = 0;
    for (; n < 600; ++n) {
        const auto e = testing::random_sequences(rng, 6, 2, 4);
        bad += align_sequences(e, p).score() == testing::brute_force_alignment_score(e, p) ? 0 : 1;
    }
    return {bad == 0, std::to_string(n - bad) + "/" + std::to_string(n) + " instances at the exhaustive optimum"};
}

Outcome nw_reduction() {
    std::mt19937 rng(1002);
    const MatchParams p;
    int n = 0, bad = 0;
    for (; n < 200; ++n) {
        const auto e = testing::random_sequences(rng, 8, 1, 8);
        std::vector<std::string> x, y;
        for (const auto& t : e.hypothesis)
            x.push_back(t.text);
        for (const auto& t : e.references[0])
            y.push_back(t.text);
        bad += align_sequences(e, p).score() == pairwise_nw(x, y, p).score ? 0 : 1;
    }
    return {bad == 0, std::to_string(n - bad) + "/" + std::to_string(n) + " scores equal to pairwise NW"};
}

Outcome hungarian_optimality() {
    std::mt19937 rng(1003);
    std::uniform_int_distribution<std::size_t> side(1, 6);
    std::uniform_int_distribution<std::int64_t> value(-20, 0);
    int n = 0, bad = 0;
    for (; n < 200; ++n) {
        const auto h = side(rng), r = side(rng);
        std::vector<std::vector<std::int64_t>> real(h, std::vector<std::int64_t>(r));
        for (auto& row : real)
            for (auto& v : row)
                v = value(rng);
        const auto m = make_cost_matrix(real, h, r);
        const auto cols = optimal_assignment(m.cost);
        std::int64_t cost = 0;
        for (std::size_t i = 0; i < cols.size(); ++i)
            cost += m.cost[i][cols[i]];
        bad += cost == testing::brute_force_assignment(m.cost) ? 0 : 1;
    }
    return {bad == 0, std::to_string(n - bad) + "/" + std::to_string(n) + " matrices at the enumerated minimum"};
}

Outcome metric_identities() {
    std::mt19937 rng(1004);
    double worst = 0;
    int fixtures = 0;
    for (int it = 0; it < 100; ++it) {
        const auto ref = testing::synthetic_reference(rng, 1 + it % 4, 60, 200);
        const auto hyp = testing::synthetic_hypothesis(
            rng, ref, {.substitution = 0.15, .deletion = 0.15, .insertion = 0.1, .speaker_error = 0.3});
        const auto rt = parse_transcript(ref, Role::reference);
        const auto ht = parse_transcript(hyp, Role::hypothesis);
        const auto a = align(rt, ht);
        const auto t = tder(a, map_speakers(a), rt);
        worst = std::max(worst, std::abs(t.value() - (t.e_se() + t.e_fa() + t.e_ms())));
        ++fixtures;
    }
    std::uniform_int_distribution<int> spk(0, 4);
    std::uniform_real_distribution<double> dur(0.01, 30.0);
    for (int it = 0; it < 100; ++it) {
        std::vector<SegmentAnnotation> segs;
        for (int s = 0; s < 10; ++s) {
            const int nr = 1 + spk(rng) % 4, nh = spk(rng);
            std::uniform_int_distribution<int> nc(0, std::min(nr, nh));
            segs.push_back({dur(rng), nr, nh, nc(rng)});
        }
        const auto d = der(segs);
        worst = std::max(worst, std::abs(d.value() - (d.e_se() + d.e_fa() + d.e_ms())));
        ++fixtures;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d fixtures (100 TDER, 100 DER), max |lhs - rhs| = %.3g", fixtures, worst);
    return {worst <= 1e-12, buf};
}

// Two transcribers over one conversation. Both copy every utterance with
// the right speaker and the same near-miss word errors; the second one also
// silently drops exactly 10% of the reference token count, chosen among
// correctly transcribed tokens. Words are unique so that no alignment tie
// can pair a token with another speaker's word.
Outcome wder_blind_spot() {
    std::mt19937 rng(1005);
    const std::size_t tokens = 3000;
    const auto ref = testing::synthetic_reference(rng, 3, tokens, 1'000'000, 0.0);
    const auto ra = testing::synthetic_hypothesis(rng, ref, {.near_miss = 0.1});

    std::vector<std::pair<std::size_t, std::size_t>> correct;
    for (std::size_t u = 0; u < ra["utterances"].size(); ++u) {
        const auto rt = tokenize(ref["utterances"][u]["text"].get<std::string>());
        const auto ht = tokenize(ra["utterances"][u]["text"].get<std::string>());
        for (std::size_t k = 0; k < ht.size(); ++k)
            if (ht[k] == rt[k])
                correct.emplace_back(u, k);
    }
    std::shuffle(correct.begin(), correct.end(), rng);
    correct.resize(tokens / 10);
    std::sort(correct.begin(), correct.end());

    auto at = ra;
    at["utterances"] = nlohmann::json::array();
    for (std::size_t u = 0; u < ra["utterances"].size(); ++u) {
        const auto words = tokenize(ra["utterances"][u]["text"].get<std::string>());
        std::string text;
        for (std::size_t k = 0; k < words.size(); ++k)
            if (!std::binary_search(correct.begin(), correct.end(), std::pair{u, k}))
                text += (text.empty() ? "" : " ") + words[k];
        if (!text.empty()) {
            auto item = ra["utterances"][u];
            item["text"] = text;
            at["utterances"].push_back(std::move(item));
        }
    }

    const auto reference = parse_transcript(ref, Role::reference);
    const auto eval = [&](const nlohmann::json& h) {
        const auto a = align(reference, parse_transcript(h, Role::hypothesis));
        const auto m = map_speakers(a);
        return std::pair{wder(a, m), df1(a, m)};
    };
    const auto [wder_ra, df1_ra] = eval(ra);
    const auto [wder_at, df1_at] = eval(at);

    const bool same_wder = wder_ra.numerator * wder_at.denominator == wder_at.numerator * wder_ra.denominator;
    // recall_RA - recall_AT >= 1/10, kept in integers.
    const bool separated = (df1_ra.matched - df1_at.matched) * 10 >= df1_ra.reference_tokens &&
                           df1_ra.reference_tokens == df1_at.reference_tokens;
    char buf[200];
    std::snprintf(buf, sizeof buf, "WDER %.4f vs %.4f, recall %.4f vs %.4f, F1 %.4f vs %.4f", wder_ra.value(),
                  wder_at.value(), df1_ra.recall(), df1_at.recall(), df1_ra.f1(), df1_at.f1());
    return {same_wder && separated && df1_at.f1() < df1_ra.f1(), buf};
}

Outcome scale() {
    std::mt19937 rng(1006);
    const auto ref = testing::synthetic_reference(rng, 5, 200'000);
    const auto hyp = testing::synthetic_hypothesis(
        rng, ref, {.substitution = 0.05, .deletion = 0.03, .insertion = 0.03, .speaker_error = 0.05});
    const auto rt = parse_transcript(ref, Role::reference);
    const auto ht = parse_transcript(hyp, Role::hypothesis);

    const auto t0 = Clock::now();
    RunOptions o;
    const auto run = run_alignment(rt, ht, o);
    const double elapsed = seconds_since(t0);
    const auto violation = find_violation(run.alignment);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu reference tokens, %zu segments, budget %zu cells/segment, %.1fs",
                  rt.token_count(), run.segments, o.segmentation.cell_budget, elapsed);
    return {rt.token_count() == 200'000 && !violation && run.segments > 1 && elapsed < 600.0, buf};
}

Outcome trivial() {
    std::mt19937 rng(1007);
    std::vector<Transcript> cases{testing::working_reference()};
    for (std::size_t s = 1; s <= 4; ++s)
        cases.push_back(parse_transcript(testing::synthetic_reference(rng, s, 150), Role::reference));
    int bad = 0;
    for (const auto& ref : cases) {
        auto hyp = ref;
        hyp.role = Role::hypothesis;
        const auto a = align(ref, hyp);
        const auto m = map_speakers(a);
        const auto d = df1(a, m);
        const bool ok = wer(a).numerator == 0 && wder(a, m).numerator == 0 && tder(a, m, ref).value() == 0.0 &&
                        d.precision() == 1.0 && d.recall() == 1.0 && d.f1() == 1.0 &&
                        classify_errors(a, ref).total() == 0;
        bad += ok ? 0 : 1;
    }
    return {bad == 0, std::to_string(cases.size() - bad) + "/" + std::to_string(cases.size()) +
                          " identical pairs with zero error and DF1 = (1, 1, 1)"};
}

}  // namespace

int main() {
    report("golden-example", golden);
    report("oracle-optimality", oracle_optimality);
    report("nw-reduction", nw_reduction);
    report("hungarian-optimality", hungarian_optimality);
    report("metric-identities", metric_identities);
    report("wder-vs-df1", wder_blind_spot);
    report("scale-200k", scale);
    report("trivial-cases", trivial);
    std::printf("%s\n", failures == 0 ? "all criteria passed" : "some criteria FAILED");
    return failures == 0 ? 0 : 1;
}
