#ifndef SHIELDSIM_ATTACKER_HPP
#define SHIELDSIM_ATTACKER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "shieldsim/rsa.hpp"
#include "shieldsim/scenario.hpp"
#include "shieldsim/simulation.hpp"

namespace shieldsim {

// Per-bit sample windows [first, end), derived from the schedule's bit tags.
// Only windows fully inside a bit's tick span count; the adversary model
// grants the attacker this ground-truth timing.
struct SlotTiming {
    struct Slot {
        std::int64_t first = 0;
        std::int64_t end = 0;
    };
    std::vector<Slot> slots; // index = key bit
};

SlotTiming slot_timing(const PowerSchedule &schedule, std::int64_t ticks_per_window);

// Arithmetic mean of the samples inside each slot. Throws when a slot is
// empty, naming the bit index.
std::vector<double> slot_means(std::span<const double> trace, const SlotTiming &timing);

struct ThresholdResult {
    double theta = 0.0;
    bool degenerate = false; // all slot means identical
};

// 1-D two-means split of the slot means, centroids seeded at min and max,
// iterated to a fixed point; the threshold is the centroid midpoint.
ThresholdResult adaptive_threshold(const std::vector<double> &means);

struct KeyGuess {
    std::vector<std::uint8_t> bits;
    std::vector<double> margins; // |slot mean - theta|, the score vector
    bool degenerate = false;
};

// Element-wise average of the aligned traces, then slot means, then the
// adaptive threshold; a slot mean below the threshold reads as a 1-bit
// (more power -> fewer oscillations).
KeyGuess extract_key(const std::vector<Trace> &traces, const SlotTiming &timing);
KeyGuess extract_key_from_average(const std::vector<double> &avg, const SlotTiming &timing);

int hamming_distance(const std::vector<std::uint8_t> &a, const std::vector<std::uint8_t> &b);

struct AttackResult {
    int traces_used = 0;
    int bit_errors = 0;
    bool success = false;
    bool saturated = false; // n_max reached without success
    KeyGuess guess;
};

// Smallest N <= n_max whose N-trace average recovers the key within the
// configured bit-error tolerance. Trace seeds derive from `attack_seed`.
AttackResult attack_until_success(const Scenario &sc, const RsaKey &key,
                                  std::uint64_t attack_seed, int n_max);

struct EffortResult {
    double mean_traces = 0.0; // saturated trials counted at n_max
    int failures = 0;         // trials where n_max was insufficient
    std::vector<int> per_trial;
};

// Mean minimal trace count over independent trials (fresh key and seeds per
// trial unless the scenario pins a key).
EffortResult attack_effort(const Scenario &sc, int trials, int n_max);

} // namespace shieldsim

#endif
