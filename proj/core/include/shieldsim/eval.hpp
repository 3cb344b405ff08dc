#ifndef SHIELDSIM_EVAL_HPP
#define SHIELDSIM_EVAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shieldsim/attacker.hpp"
#include "shieldsim/scenario.hpp"

namespace shieldsim {

// Welch's t statistic with n-1 sample variances. Throws on groups smaller
// than two or zero pooled variance.
double welch_t(std::span<const double> group_a, std::span<const double> group_b);

// Streaming fixed-vs-random leakage assessment. Traces arrive in pairs of
// equal length; after each pair the per-point t statistics are evaluated.
// Points where both groups have zero variance count as leakage evidence
// when their means differ (t = +inf) and are skipped otherwise.
class TvlaEngine {
  public:
    static constexpr int kMinPairs = 2;

    void add_pair(std::span<const double> fixed_trace, std::span<const double> random_trace);

    int pairs() const { return pairs_; }
    // Largest |t| over testable points, NaN when nothing is testable yet.
    double current_t_max() const;
    bool crossed(double threshold) const;

  private:
    struct PointStats {
        std::int64_t n = 0;
        double mean = 0.0;
        double m2 = 0.0;
        void add(double v);
        double variance() const; // n-1 divisor
    };
    std::vector<PointStats> fixed_, random_;
    int pairs_ = 0;
};

struct TvlaReport {
    double threshold = 4.5;
    bool crossed = false;
    int traces_to_cross = 0;            // total traces acquired at crossing
    std::vector<double> t_max_per_pair; // curve for plot data
};

// Interleaved acquisition against the scenario: the fixed group replays one
// exponent, the random group draws a fresh exponent per pair. Stops at the
// crossing or after n_max total traces.
TvlaReport tvla_traces_to_leak(const Scenario &sc, int n_max_traces);

struct CorrelationReport {
    std::vector<double> coefficients; // NaN marks an undefined pair
    int undefined_pairs = 0;
    double mean_defined = 0.0;
};

// Pearson coefficient of each consecutive trace pair (population divisor).
CorrelationReport consecutive_correlation(const std::vector<std::vector<double>> &traces);

double pearson(std::span<const double> x, std::span<const double> y); // NaN if degenerate

// Candidate list from the margin-ranked guess: candidate #j flips the j-1
// lowest-margin bits cumulatively. True when the truth appears among the
// first order_n candidates.
bool guess_ranks_within(const KeyGuess &guess, const std::vector<std::uint8_t> &truth,
                        int order_n);

// n-th order success rate over independent trials with `traces` traces each.
double success_rate(const Scenario &sc, int order_n, int trials, int traces);

struct VariantOverhead {
    std::string variant;
    long long ff_count = 0;
    double power_w = 0.0; // time-averaged defense + monitor power
};

struct OverheadReport {
    std::vector<VariantOverhead> variants; // none, random, shield
    double ff_shield_vs_random = 0.0;
    double power_shield_vs_random = 0.0;
    double ff_shield_vs_none = 0.0;
    double power_shield_vs_none = 0.0;
};

// Flip-flop inventory per variant from the declared config model plus the
// time-averaged simulated power of a standard run.
VariantOverhead overhead_for_variant(const Scenario &sc, const std::string &variant);
OverheadReport overhead_report(const Scenario &sc);

} // namespace shieldsim

#endif
