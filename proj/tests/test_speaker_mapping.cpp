#include <gtest/gtest.h>

#include <random>
#include <set>

#include <tdalign/segmentation.hpp>
#include <tdalign/speaker_mapping.hpp>

#include "support/oracles.hpp"
#include "support/working_example.hpp"

namespace tdalign {
namespace {

CostMatrix square(std::vector<std::vector<std::int64_t>> c) {
    const auto n = c.size();
    return make_cost_matrix(std::move(c), n, n);
}

TEST(BuildCostMatrix, WorkingExample) {
    const auto a = align(testing::working_reference(), testing::working_hypothesis());
    const auto m = build_cost_matrix(a);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m.cost[0][0], -6);  // A' with A
    EXPECT_EQ(m.cost[0][1], -2);  // A' with B
    EXPECT_EQ(m.cost[1][0], 0);   // dummy row
    const auto mapping = hungarian(m);
    EXPECT_EQ(mapping.hyp_to_ref[0], 0u);
    EXPECT_FALSE(mapping.ref_to_hyp[1].has_value());
}

TEST(BuildCostMatrix, PerfectSingleSpeaker) {
    const auto ref = parse_transcript(R"({"speakers":["A"],"utterances":[{"speaker":"A","text":"a b c d e"}]})",
                                      Role::reference);
    const auto hyp = parse_transcript(R"({"speakers":["s"],"utterances":[{"speaker":"s","text":"a b c d e"}]})",
                                      Role::hypothesis);
    const auto m = build_cost_matrix(align(ref, hyp));
    ASSERT_EQ(m.size(), 1u);
    EXPECT_EQ(m.cost[0][0], -5);
}

TEST(BuildCostMatrix, MoreHypothesisSpeakersThanReference) {
    const auto ref = parse_transcript(
        R"({"speakers":["A","B","C","D"],"utterances":[
            {"speaker":"A","text":"a1 a2 a3"},{"speaker":"B","text":"b1 b2 b3"},
            {"speaker":"C","text":"c1 c2 c3"},{"speaker":"D","text":"d1 d2 d3"}]})",
        Role::reference);
    const auto hyp = parse_transcript(
        R"({"speakers":["s0","s1","s2","s3","s4"],"utterances":[
            {"speaker":"s0","text":"a1 a2 a3"},{"speaker":"s1","text":"zz"},{"speaker":"s2","text":"b1 b2 b3"},
            {"speaker":"s3","text":"c1 c2 c3"},{"speaker":"s4","text":"d1 d2 d3"}]})",
        Role::hypothesis);
    const auto m = build_cost_matrix(align(ref, hyp));
    EXPECT_EQ(m.size(), 5u);
    for (std::size_t h = 0; h < 5; ++h)
        EXPECT_EQ(m.cost[h][4], 0);
    const auto mapping = hungarian(m);
    EXPECT_FALSE(mapping.hyp_to_ref[1].has_value());
    EXPECT_EQ(mapping.hyp_to_ref[0], 0u);
    EXPECT_EQ(mapping.hyp_to_ref[2], 1u);
    EXPECT_EQ(mapping.hyp_to_ref[3], 2u);
    EXPECT_EQ(mapping.hyp_to_ref[4], 3u);
}

TEST(Hungarian, DiagonalDominance) {
    const auto m = hungarian(square({{-5, 0}, {0, -3}}));
    EXPECT_EQ(m.hyp_to_ref[0], 0u);
    EXPECT_EQ(m.hyp_to_ref[1], 1u);
}

TEST(Hungarian, FullTieResolvesToLowestIndices) {
    const auto m = hungarian(square({{-1, -1}, {-1, -1}}));
    EXPECT_EQ(m.hyp_to_ref[0], 0u);
    EXPECT_EQ(m.hyp_to_ref[1], 1u);
}

TEST(Hungarian, AntiDiagonal) {
    const auto m = hungarian(square({{0, -4}, {-4, 0}}));
    EXPECT_EQ(m.hyp_to_ref[0], 1u);
    EXPECT_EQ(m.hyp_to_ref[1], 0u);
}

TEST(Hungarian, EmptyMatrix) {
    const auto m = hungarian(square({}));
    EXPECT_TRUE(m.hyp_to_ref.empty());
}

TEST(Hungarian, MatchesPermutationEnumeration) {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> size(1, 6), val(-20, 5);
    for (int it = 0; it < 300; ++it) {
        const auto n = static_cast<std::size_t>(size(rng));
        std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(n));
        for (auto& row : c)
            for (auto& x : row)
                x = val(rng) / 3;  // coarse values force ties
        const auto cols = optimal_assignment(c);
        std::set<std::size_t> used(cols.begin(), cols.end());
        ASSERT_EQ(used.size(), n);
        std::int64_t total = 0;
        for (std::size_t r = 0; r < n; ++r)
            total += c[r][cols[r]];
        ASSERT_EQ(total, testing::brute_force_assignment(c));
    }
}

TEST(Hungarian, TieBreakIsLexicographicallySmallest) {
    std::mt19937 rng(78);
    std::uniform_int_distribution<int> val(-2, 0);
    for (int it = 0; it < 100; ++it) {
        const std::size_t n = 4;
        std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(n));
        for (auto& row : c)
            for (auto& x : row)
                x = val(rng);
        const auto best = testing::brute_force_assignment(c);
        std::vector<std::size_t> perm{0, 1, 2, 3}, first;
        do {
            std::int64_t s = 0;
            for (std::size_t r = 0; r < n; ++r)
                s += c[r][perm[r]];
            if (s == best) {
                first = perm;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        ASSERT_EQ(optimal_assignment(c), first);
    }
}

}  // namespace
}  // namespace tdalign
