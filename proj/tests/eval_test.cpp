#include <gtest/gtest.h>

#include <cmath>

#include "shieldsim/eval.hpp"
#include "shieldsim/rng.hpp"

using namespace shieldsim;

TEST(WelchT, HandComputedCases) {
    const std::vector<double> same{1, 2, 3, 4};
    EXPECT_NEAR(welch_t(same, same), 0.0, 1e-12);

    const std::vector<double> a{0, 1, 0, 1};
    const std::vector<double> b{1, 2, 1, 2};
    EXPECT_NEAR(welch_t(a, b), -2.449489742783178, 1e-9);

    // Unequal sizes, hand evaluation: mean 2 vs 5, s^2 = 1 vs 4.
    const std::vector<double> c{1, 2, 3};
    const std::vector<double> d{3, 5, 7};
    EXPECT_NEAR(welch_t(c, d), (2.0 - 5.0) / std::sqrt(1.0 / 3 + 4.0 / 3), 1e-9);
}

TEST(WelchT, ErrorPaths) {
    const std::vector<double> zeros{0, 0};
    EXPECT_THROW(welch_t(zeros, zeros), std::invalid_argument);
    const std::vector<double> one{1};
    const std::vector<double> two{1, 2};
    EXPECT_THROW(welch_t(one, two), std::invalid_argument);
}

TEST(WelchT, AntisymmetryAndScaleInvariance) {
    Rng rng(8);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> a(6), b(9);
        for (auto &v : a)
            v = rng.next_unit() * 10;
        for (auto &v : b)
            v = 3 + rng.next_unit() * 10;
        const double t = welch_t(a, b);
        EXPECT_NEAR(welch_t(b, a), -t, 1e-12);
        std::vector<double> a2 = a, b2 = b;
        for (auto &v : a2)
            v *= 3.5;
        for (auto &v : b2)
            v *= 3.5;
        EXPECT_NEAR(welch_t(a2, b2), t, 1e-9);
    }
}

TEST(Tvla, ZeroContrastNeverCrosses) {
    // Identical generating process in both groups: flat traces plus noise.
    Rng rng(99);
    TvlaEngine engine;
    for (int pair = 0; pair < 100; ++pair) {
        std::vector<double> fixed(64), random(64);
        for (std::size_t i = 0; i < 64; ++i) {
            fixed[i] = 300 + std::floor(3 * rng.next_unit());
            random[i] = 300 + std::floor(3 * rng.next_unit());
        }
        engine.add_pair(fixed, random);
    }
    EXPECT_FALSE(engine.crossed(4.5));
}

// Known mean gap: the crossing pair count must match the closed-form
// prediction of the pooled statistic within one pair.
TEST(Tvla, CrossingMatchesClosedFormPrediction) {
    const double gap = 1.0;
    const double half = 2.0; // deterministic two-level spread, sd = 2
    TvlaEngine engine;
    int crossed_at = -1;
    // Group values alternate +-2 around the group mean; the random group's
    // mean sits `gap` lower at every point.
    for (int pair = 0; pair < 200 && crossed_at < 0; ++pair) {
        const double wobble = (pair % 2 == 0) ? half : -half;
        std::vector<double> fixed(32, 300.0 + wobble);
        std::vector<double> random(32, 300.0 - gap + wobble);
        engine.add_pair(fixed, random);
        if (engine.crossed(4.5))
            crossed_at = engine.pairs();
    }
    ASSERT_GT(crossed_at, 0);
    // Prediction: t = gap / sqrt((va + vb)/n) with va = vb = s^2 + 1/12 and
    // s^2 the n-1 sample variance of the +-2 alternation.
    int predicted = -1;
    for (int n = TvlaEngine::kMinPairs; n < 200 && predicted < 0; ++n) {
        const double s2 = half * half * n / (n - 1.0);
        const double var = s2 + 1.0 / 12.0;
        const double t = gap / std::sqrt(2.0 * var / n);
        if (t > 4.5)
            predicted = n;
    }
    EXPECT_NEAR(crossed_at, predicted, 1.0);
}

// With a true gap the statistic grows like sqrt(pairs).
TEST(Tvla, EvidenceGrowsAsSqrtPairs) {
    Rng rng(123);
    TvlaEngine engine;
    std::vector<double> t_at;
    for (int pair = 0; pair < 64; ++pair) {
        std::vector<double> fixed(40), random(40);
        for (std::size_t i = 0; i < 40; ++i) {
            fixed[i] = std::floor(300 + 4 * rng.next_unit());
            random[i] = std::floor(299 + 4 * rng.next_unit());
        }
        engine.add_pair(fixed, random);
        if (engine.pairs() == 16 || engine.pairs() == 64)
            t_at.push_back(engine.current_t_max());
    }
    ASSERT_EQ(t_at.size(), 2u);
    EXPECT_NEAR(t_at[1] / t_at[0], 2.0, 0.6); // sqrt(64/16) = 2
}

TEST(Pearson, HandComputedCases) {
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> y{1, 2, 4};
    EXPECT_NEAR(pearson(x, y), 0.9819805060619659, 1e-9);
    EXPECT_DOUBLE_EQ(pearson(x, x), 1.0);
    std::vector<double> neg{-1, -2, -3};
    EXPECT_DOUBLE_EQ(pearson(x, neg), -1.0);
    const std::vector<double> flat{5, 5, 5};
    EXPECT_TRUE(std::isnan(pearson(x, flat)));
}

TEST(ConsecutiveCorrelation, ReportFields) {
    std::vector<std::vector<double>> traces{{1, 2, 3}, {1, 2, 3}, {3, 2, 1}, {7, 7, 7}};
    const CorrelationReport report = consecutive_correlation(traces);
    ASSERT_EQ(report.coefficients.size(), 3u);
    EXPECT_DOUBLE_EQ(report.coefficients[0], 1.0);
    EXPECT_DOUBLE_EQ(report.coefficients[1], -1.0);
    EXPECT_TRUE(std::isnan(report.coefficients[2]));
    EXPECT_EQ(report.undefined_pairs, 1);
    EXPECT_DOUBLE_EQ(report.mean_defined, 0.0);
    for (double r : report.coefficients)
        if (!std::isnan(r)) {
            EXPECT_GE(r, -1.0);
            EXPECT_LE(r, 1.0);
        }
    EXPECT_THROW(consecutive_correlation({{1, 2}}), std::invalid_argument);
    EXPECT_THROW(consecutive_correlation({{1, 2}, {1, 2, 3}}), std::invalid_argument);
}

TEST(SuccessRate, CandidateRanking) {
    KeyGuess guess;
    guess.bits = {1, 0, 1, 0};
    guess.margins = {5.0, 0.1, 4.0, 3.0};
    const std::vector<std::uint8_t> truth_exact{1, 0, 1, 0};
    EXPECT_TRUE(guess_ranks_within(guess, truth_exact, 1));

    // One wrong bit with the lowest margin: rank 2 reaches it.
    const std::vector<std::uint8_t> truth_flip_low{1, 1, 1, 0};
    EXPECT_FALSE(guess_ranks_within(guess, truth_flip_low, 1));
    EXPECT_TRUE(guess_ranks_within(guess, truth_flip_low, 2));

    // A wrong high-margin bit is not reachable by low orders.
    const std::vector<std::uint8_t> truth_flip_high{0, 0, 1, 0};
    EXPECT_FALSE(guess_ranks_within(guess, truth_flip_high, 1));
    EXPECT_FALSE(guess_ranks_within(guess, truth_flip_high, 3));

    // Cumulative flips: truth two lowest margins away.
    const std::vector<std::uint8_t> truth_two{1, 1, 1, 1};
    EXPECT_TRUE(guess_ranks_within(guess, truth_two, 3));
    EXPECT_FALSE(guess_ranks_within(guess, truth_two, 2));

    EXPECT_THROW(guess_ranks_within(guess, {1, 0}, 1), std::invalid_argument);
    EXPECT_THROW(guess_ranks_within(guess, truth_exact, 0), std::invalid_argument);
}

TEST(SuccessRate, NoiseFreeScenarioIsCertainAtOrderOne) {
    Scenario sc = parse_scenario("[experiment]\nseed = 31\n[victim]\nkey_bits = 48\n");
    EXPECT_DOUBLE_EQ(success_rate(sc, 1, 8, 1), 1.0);
}

TEST(Overhead, VariantInventoryAndRatios) {
    Scenario sc = parse_scenario("[experiment]\nseed = 13\n[victim]\nkey_bits = 48\n");
    const OverheadReport report = overhead_report(sc);
    ASSERT_EQ(report.variants.size(), 3u);
    EXPECT_EQ(report.variants[0].variant, "none");
    EXPECT_EQ(report.variants[0].ff_count, 0);
    EXPECT_DOUBLE_EQ(report.variants[0].power_w, 0.0);

    // Random baseline: n_ros T-FF chains plus the LFSR.
    const long long random_ff = 96LL * 8 + 16;
    EXPECT_EQ(report.variants[1].ff_count, random_ff);

    // Shield: monitor counters + reference counter + per-set enables + controller.
    const long long shield_ff = 32LL * 16 + 16 + 4 * 1 + 20;
    EXPECT_EQ(report.variants[2].ff_count, shield_ff);

    // Ratios recompute exactly from the raw fields.
    EXPECT_DOUBLE_EQ(report.ff_shield_vs_random,
                     static_cast<double>(shield_ff) / random_ff);
    EXPECT_DOUBLE_EQ(report.power_shield_vs_random,
                     report.variants[2].power_w / report.variants[1].power_w);
    EXPECT_GT(report.variants[1].power_w, 0.0);
    EXPECT_GT(report.variants[2].power_w, 0.0);

    EXPECT_THROW(overhead_for_variant(sc, "mystery"), std::invalid_argument);
}

TEST(Overhead, MonitorFfExample) {
    // m=32, n_ff=16, reference width 16 -> 528 monitor flip-flops.
    Scenario sc = parse_scenario("[experiment]\nseed = 13\n[victim]\nkey_bits = 48\n");
    const long long monitor_ff =
        static_cast<long long>(sc.monitor.m) * sc.monitor.sensor.n_ff +
        sc.overhead.c_ref_width_ff;
    EXPECT_EQ(monitor_ff, 528);
}
