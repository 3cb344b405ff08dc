#include <gtest/gtest.h>

#include "shieldsim/dse.hpp"
#include "shieldsim/scenario.hpp"

using namespace shieldsim;

namespace {

CandidateMetrics metrics(double err, long long ff, double power) {
    CandidateMetrics m;
    m.avg_bit_errors = err;
    m.ff_count = ff;
    m.avg_power = power;
    return m;
}

Scenario tiny_dse_scenario() {
    return parse_scenario("[experiment]\nseed = 19\n"
                          "[victim]\nkey_bits = 32\n"
                          "[dse]\ntrials = 3\neffort_trials = 1\neffort_n_max = 2\n");
}

} // namespace

TEST(DseCost, NormalizedExamples) {
    // Normalized metric vectors (1,0,0) and (0,1,1) under equal weights.
    std::vector<CandidateMetrics> sweep{metrics(1, 0, 0), metrics(0, 1, 1)};
    const auto costs = dse_costs(sweep, 1.0 / 3, 1.0 / 3, 1.0 / 3);
    EXPECT_NEAR(costs[0], 1.0 / 3, 1e-12);
    EXPECT_NEAR(costs[1], 2.0 / 3, 1e-12);
}

TEST(DseCost, PureAccuracyProjection) {
    std::vector<CandidateMetrics> sweep{metrics(4, 9999, 5), metrics(2, 1, 0),
                                        metrics(0, 500, 1)};
    const auto costs = dse_costs(sweep, 1.0, 0.0, 0.0);
    EXPECT_DOUBLE_EQ(costs[0], 1.0);
    EXPECT_DOUBLE_EQ(costs[1], 0.5);
    EXPECT_DOUBLE_EQ(costs[2], 0.0);
}

TEST(DseCost, AllZeroMetricsCostZero) {
    std::vector<CandidateMetrics> sweep{metrics(0, 0, 0), metrics(0, 0, 0)};
    for (double c : dse_costs(sweep, 0.5, 0.25, 0.25))
        EXPECT_DOUBLE_EQ(c, 0.0);
}

TEST(DseCost, WeightValidation) {
    std::vector<CandidateMetrics> sweep{metrics(1, 1, 1)};
    EXPECT_THROW(dse_costs(sweep, 0, 0, 0), std::invalid_argument);
    EXPECT_THROW(dse_costs(sweep, -1, 1, 1), std::invalid_argument);
    EXPECT_THROW(dse_costs({}, 1, 0, 0), std::invalid_argument);
}

TEST(Dse, TieBrokenByFewerFlipFlops) {
    // Equal cost, 528 vs 1040 FFs: the smaller monitor wins.
    Scenario sc = tiny_dse_scenario();
    std::vector<RankedCandidate> list;
    RankedCandidate a;
    a.candidate = DseCandidate{"close2", 10e6, 64};
    a.metrics = metrics(0, 1040, 0);
    a.cost = 0.25;
    RankedCandidate b;
    b.candidate = DseCandidate{"close2", 10e6, 32};
    b.metrics = metrics(0, 528, 0);
    b.cost = 0.25;
    // Rank through the public explore path is heavyweight; the tie rule is
    // exercised via a two-candidate sweep with pinned weights instead.
    Scenario twocand = sc;
    twocand.dse.placements = {"close2"};
    twocand.dse.f_refs = {10e6};
    twocand.dse.ro_counts = {64, 32};
    twocand.dse.w_accuracy = 0.0;
    twocand.dse.w_area = 0.0;
    twocand.dse.w_power = 1.0; // both candidates idle at zero power: all tie
    const DseResult result = explore(twocand);
    ASSERT_EQ(result.ranked.size(), 2u);
    EXPECT_DOUBLE_EQ(result.ranked[0].cost, result.ranked[1].cost);
    EXPECT_EQ(result.ranked[0].metrics.ff_count, 528);
    EXPECT_EQ(result.ranked[1].metrics.ff_count, 1040);
}

TEST(Dse, ExhaustiveSweepCountsAndOrder) {
    Scenario sc = tiny_dse_scenario();
    sc.dse.placements = {"close2", "far"};
    sc.dse.f_refs = {10e6};
    sc.dse.ro_counts = {16, 32};
    const DseResult result = explore(sc);
    ASSERT_EQ(result.ranked.size(), 4u);
    EXPECT_FALSE(result.degenerate_normalization);
    for (std::size_t i = 0; i < result.ranked.size(); ++i) {
        EXPECT_EQ(result.ranked[i].rank, static_cast<int>(i) + 1);
        if (i > 0)
            EXPECT_GE(result.ranked[i].cost, result.ranked[i - 1].cost);
    }
    // Winner cost is minimal by construction.
    for (const auto &rc : result.ranked)
        EXPECT_LE(result.ranked[0].cost, rc.cost);
}

TEST(Dse, SingleCandidateSweepIsFlaggedDegenerate) {
    Scenario sc = tiny_dse_scenario();
    sc.dse.placements = {"close2"};
    sc.dse.f_refs = {10e6};
    sc.dse.ro_counts = {32};
    const DseResult result = explore(sc);
    ASSERT_EQ(result.ranked.size(), 1u);
    EXPECT_TRUE(result.degenerate_normalization);
    EXPECT_DOUBLE_EQ(result.ranked[0].cost, 0.0);
}

TEST(Dse, IdenticalCandidatesSameSeedsIdenticalMetrics) {
    Scenario sc = tiny_dse_scenario();
    const DseCandidate c{"close2", 10e6, 16};
    const CandidateMetrics a = evaluate_candidate(sc, c, 5);
    const CandidateMetrics b = evaluate_candidate(sc, c, 5);
    EXPECT_DOUBLE_EQ(a.avg_bit_errors, b.avg_bit_errors);
    EXPECT_DOUBLE_EQ(a.traces_to_extract, b.traces_to_extract);
    EXPECT_EQ(a.ff_count, b.ff_count);
}

TEST(Dse, CoordinateModeVisitsEachAxis) {
    Scenario sc = tiny_dse_scenario();
    sc.dse.exhaustive = false;
    sc.dse.placements = {"close2", "far"};
    sc.dse.f_refs = {10e6};
    sc.dse.ro_counts = {16, 32};
    const DseResult result = explore(sc);
    // Two placements + one frequency + two counts evaluated along the walk.
    EXPECT_EQ(result.ranked.size(), 5u);
}

TEST(Dse, CandidateNameFormat) {
    const DseCandidate c{"close2", 10e6, 32};
    EXPECT_EQ(c.name(), "close2-10MHz-32");
}
