#pragma once

// The two-speaker example: A's utterance overlapped by B's "indeed indeed",
// merged by the transcriber into one utterance of speaker A'.

#include <array>
#include <string>

#include <tdalign/transcript.hpp>

namespace tdalign::testing {

inline const std::string kReferenceJson = R"({
  "speakers": ["A", "B"],
  "utterances": [
    {"speaker": "A", "text": "You're going to go to uh Amsterdam.", "start_ms": 0, "end_ms": 2100},
    {"speaker": "B", "text": "indeed indeed", "start_ms": 1500, "end_ms": 2000, "overlap": true}
  ]
})";

inline const std::string kHypothesisJson = R"({
  "speakers": ["A'"],
  "utterances": [
    {"speaker": "A'", "text": "You're gonna to go to indeed indeed Amsterdam.", "start_ms": 0, "end_ms": 2100}
  ]
})";

inline Transcript working_reference() { return parse_transcript(kReferenceJson, Role::reference); }
inline Transcript working_hypothesis() { return parse_transcript(kHypothesisJson, Role::hypothesis); }

// F[z][y][x] for x in 0..8 (hypothesis), y in 0..7 (A), z in 0..2 (B),
// transcribed from the published scoring-matrix tables.
inline constexpr std::array<std::array<std::array<long, 9>, 8>, 3> kScoringTables{{
    {{
        {0, -1, -2, -3, -4, -5, -6, -7, -8},
        {-1, 2, 1, 0, -1, -2, -3, -4, -5},
        {-2, 1, 1, 0, -1, -2, -3, -4, -5},
        {-3, 0, 0, 3, 2, 1, 0, -1, -2},
        {-4, -1, -1, 2, 5, 4, 3, 2, 1},
        {-5, -2, -2, 1, 4, 7, 6, 5, 4},
        {-6, -3, -3, 0, 3, 6, 6, 5, 4},
        {-7, -4, -4, -1, 2, 5, 5, 5, 7},
    }},
    {{
        {-1, -1, -2, -3, -4, -5, -3, -4, -5},
        {-2, 1, 1, 0, -1, -2, 0, -1, -2},
        {-3, 0, 0, 0, -1, -2, 0, -1, -2},
        {-4, -1, -1, 2, 2, 1, 3, 2, 1},
        {-5, -2, -2, 1, 4, 4, 6, 5, 4},
        {-6, -3, -3, 0, 3, 6, 9, 8, 7},
        {-7, -4, -4, -1, 2, 5, 8, 8, 7},
        {-8, -5, -5, -2, 1, 4, 7, 7, 10},
    }},
    {{
        {-2, -2, -2, -3, -4, -5, -3, -1, -2},
        {-3, 0, 0, 0, -1, -2, 0, 2, 1},
        {-4, -1, -1, -1, -1, -2, 0, 2, 1},
        {-5, -2, -2, 1, 1, 1, 3, 5, 4},
        {-6, -3, -3, 0, 3, 3, 6, 8, 7},
        {-7, -4, -4, -1, 2, 5, 8, 11, 10},
        {-8, -5, -5, -2, 1, 4, 7, 10, 10},
        {-9, -6, -6, -3, 0, 3, 6, 9, 12},
    }},
}};

// Published alignment, one entry per column: hypothesis position (or -1)
// and reference (dimension, position) with dimension 0 meaning gap.
struct ExpectedColumn {
    int hyp;
    int ref_dim;
    int ref_pos;
};

inline constexpr std::array<ExpectedColumn, 9> kAlignment{{
    {0, 1, 0},   // you're / you're
    {1, 1, 1},   // gonna / going
    {2, 1, 2},   // to / to
    {3, 1, 3},   // go / go
    {4, 1, 4},   // to / to
    {5, 2, 0},   // indeed / B indeed
    {6, 2, 1},   // indeed / B indeed
    {-1, 1, 5},  // uh against gaps
    {7, 1, 6},   // amsterdam / amsterdam
}};

// Cells visited by the published walkthrough, as (x, y, z), last to first.
inline constexpr std::array<std::array<int, 3>, 10> kWalk{{
    {8, 7, 2}, {7, 6, 2}, {7, 5, 2}, {6, 5, 1}, {5, 5, 0},
    {4, 4, 0}, {3, 3, 0}, {2, 2, 0}, {1, 1, 0}, {0, 0, 0},
}};

}  // namespace tdalign::testing
