#include "shieldsim/attacker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shieldsim/parallel.hpp"

namespace shieldsim {

SlotTiming slot_timing(const PowerSchedule &schedule, std::int64_t ticks_per_window) {
    if (ticks_per_window < 1)
        throw std::invalid_argument("slot_timing: invalid window width");
    SlotTiming timing;
    timing.slots.reserve(schedule.bit_spans().size());
    for (const auto &span : schedule.bit_spans()) {
        SlotTiming::Slot slot;
        slot.first = (span.begin + ticks_per_window - 1) / ticks_per_window;
        slot.end = span.end / ticks_per_window;
        timing.slots.push_back(slot);
    }
    return timing;
}

std::vector<double> slot_means(std::span<const double> trace, const SlotTiming &timing) {
    std::vector<double> means;
    means.reserve(timing.slots.size());
    for (std::size_t bit = 0; bit < timing.slots.size(); ++bit) {
        const auto &slot = timing.slots[bit];
        if (slot.end <= slot.first ||
            slot.end > static_cast<std::int64_t>(trace.size()))
            throw std::invalid_argument("slot_means: empty or out-of-range slot for bit " +
                                        std::to_string(bit));
        double sum = 0.0;
        for (std::int64_t i = slot.first; i < slot.end; ++i)
            sum += trace[static_cast<std::size_t>(i)];
        means.push_back(sum / static_cast<double>(slot.end - slot.first));
    }
    return means;
}

ThresholdResult adaptive_threshold(const std::vector<double> &means) {
    if (means.size() < 2)
        throw std::invalid_argument("adaptive_threshold: need at least two slot means");
    const auto [lo_it, hi_it] = std::minmax_element(means.begin(), means.end());
    double lo = *lo_it, hi = *hi_it;
    if (lo == hi)
        return ThresholdResult{lo, true};
    // Two-means on scalars: assignment by midpoint, centroid update, until
    // the midpoint stops moving.
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 64; ++iter) {
        double sum_lo = 0.0, sum_hi = 0.0;
        std::int64_t n_lo = 0, n_hi = 0;
        for (double v : means) {
            if (v <= mid) {
                sum_lo += v;
                ++n_lo;
            } else {
                sum_hi += v;
                ++n_hi;
            }
        }
        if (n_lo == 0 || n_hi == 0)
            break;
        const double next = 0.5 * (sum_lo / n_lo + sum_hi / n_hi);
        if (next == mid)
            break;
        mid = next;
    }
    return ThresholdResult{mid, false};
}

KeyGuess extract_key_from_average(const std::vector<double> &avg, const SlotTiming &timing) {
    const std::vector<double> means = slot_means(avg, timing);
    const ThresholdResult threshold = adaptive_threshold(means);
    KeyGuess guess;
    guess.degenerate = threshold.degenerate;
    guess.bits.resize(means.size());
    guess.margins.resize(means.size());
    for (std::size_t i = 0; i < means.size(); ++i) {
        // Higher victim power starves the monitor ROs, so a 1-bit shows up
        // as a below-threshold slot mean.
        guess.bits[i] = (!threshold.degenerate && means[i] < threshold.theta) ? 1 : 0;
        guess.margins[i] = std::abs(means[i] - threshold.theta);
    }
    return guess;
}

KeyGuess extract_key(const std::vector<Trace> &traces, const SlotTiming &timing) {
    if (traces.empty())
        throw std::invalid_argument("extract_key: need at least one trace");
    const std::size_t len = traces.front().size();
    for (const Trace &t : traces)
        if (t.size() != len)
            throw std::invalid_argument("extract_key: traces must have equal length");
    std::vector<double> avg(len, 0.0);
    for (const Trace &t : traces)
        for (std::size_t i = 0; i < len; ++i)
            avg[i] += static_cast<double>(t.samples[i]);
    for (double &v : avg)
        v /= static_cast<double>(traces.size());
    return extract_key_from_average(avg, timing);
}

int hamming_distance(const std::vector<std::uint8_t> &a, const std::vector<std::uint8_t> &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += (a[i] != b[i]) ? 1 : 0;
    return d;
}

AttackResult attack_until_success(const Scenario &sc, const RsaKey &key,
                                  std::uint64_t attack_seed, int n_max) {
    if (n_max < 1)
        throw std::invalid_argument("attack_until_success: n_max must be >= 1");
    const std::int64_t W = sc.ticks_per_window();

    // Slot windows shift with the per-trace head offset, so the running
    // average lives in slot space: averaging per-trace slot means equals the
    // slot means of the element-wise trace average by linearity.
    AttackResult result;
    std::vector<double> slot_sums;
    for (int n = 1; n <= n_max; ++n) {
        const std::uint64_t trace_seed =
            Rng::derive(attack_seed, kSeedTrace, static_cast<std::uint64_t>(n - 1));
        const SimResult run = simulate_trace(sc, key, trace_seed);
        const SlotTiming timing = slot_timing(run.schedule, W);
        const std::vector<double> trace_values(run.trace.samples.begin(),
                                               run.trace.samples.end());
        const std::vector<double> means = slot_means(trace_values, timing);
        if (slot_sums.empty())
            slot_sums.assign(means.size(), 0.0);
        for (std::size_t i = 0; i < means.size(); ++i)
            slot_sums[i] += means[i];

        std::vector<double> mean_of_means(slot_sums.size());
        for (std::size_t i = 0; i < slot_sums.size(); ++i)
            mean_of_means[i] = slot_sums[i] / static_cast<double>(n);

        const ThresholdResult threshold = adaptive_threshold(mean_of_means);
        KeyGuess guess;
        guess.degenerate = threshold.degenerate;
        guess.bits.resize(mean_of_means.size());
        guess.margins.resize(mean_of_means.size());
        for (std::size_t i = 0; i < mean_of_means.size(); ++i) {
            guess.bits[i] =
                (!threshold.degenerate && mean_of_means[i] < threshold.theta) ? 1 : 0;
            guess.margins[i] = std::abs(mean_of_means[i] - threshold.theta);
        }

        const int errors = hamming_distance(guess.bits, key.d_bits);
        result.traces_used = n;
        result.bit_errors = errors;
        result.guess = guess;
        if (errors <= sc.bit_error_tolerance) {
            result.success = true;
            return result;
        }
    }
    result.saturated = true;
    return result;
}

EffortResult attack_effort(const Scenario &sc, int trials, int n_max) {
    if (trials < 1 || n_max < 1)
        throw std::invalid_argument("attack_effort: trials and n_max must be >= 1");
    EffortResult result;
    result.per_trial.assign(static_cast<std::size_t>(trials), 0);
    std::vector<int> failures(static_cast<std::size_t>(trials), 0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
        const std::uint64_t key_seed =
            Rng::derive(sc.experiment.seed, kSeedKey, static_cast<std::uint64_t>(trial));
        const RsaKey key = sc.make_key(key_seed);
        const std::uint64_t attack_seed =
            Rng::derive(sc.experiment.seed, kSeedTrial, static_cast<std::uint64_t>(trial));
        const AttackResult r = attack_until_success(sc, key, attack_seed, n_max);
        result.per_trial[trial] = r.traces_used == 0 ? n_max : r.traces_used;
        if (!r.success) {
            result.per_trial[trial] = n_max;
            failures[trial] = 1;
        }
    });
    double sum = 0.0;
    for (std::size_t i = 0; i < result.per_trial.size(); ++i) {
        sum += result.per_trial[i];
        result.failures += failures[i];
    }
    result.mean_traces = sum / static_cast<double>(trials);
    return result;
}

} // namespace shieldsim
