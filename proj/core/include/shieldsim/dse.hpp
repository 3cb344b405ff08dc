#ifndef SHIELDSIM_DSE_HPP
#define SHIELDSIM_DSE_HPP

#include <string>
#include <vector>

#include "shieldsim/scenario.hpp"

namespace shieldsim {

struct DseCandidate {
    std::string placement;
    double f_ref = 0.0;
    int ro_count = 0;

    std::string name() const;
};

struct CandidateMetrics {
    double avg_bit_errors = 0.0;
    double traces_to_extract = 0.0;
    long long ff_count = 0;
    double avg_power = 0.0;
};

struct RankedCandidate {
    DseCandidate candidate;
    CandidateMetrics metrics;
    double cost = 0.0;
    int rank = 0;
};

struct DseResult {
    std::vector<RankedCandidate> ranked; // ascending cost, tie-broken
    bool degenerate_normalization = false;
};

// Attack quality of one monitor configuration against the unprotected
// victim: single-trace extractions with per-trial fresh keys (seeds shared
// across candidates) plus a short attack-effort probe.
CandidateMetrics evaluate_candidate(const Scenario &base, const DseCandidate &candidate,
                                    int trials);

// Min-max normalized weighted cost per candidate; metrics with no spread
// normalize to zero.
std::vector<double> dse_costs(const std::vector<CandidateMetrics> &metrics,
                              double w_accuracy, double w_area, double w_power);

// Full sweep (or the fix-one-parameter walk when configured), ranked by
// cost with ties broken by fewer FFs, lower power, then candidate name.
DseResult explore(const Scenario &base);

} // namespace shieldsim

#endif
