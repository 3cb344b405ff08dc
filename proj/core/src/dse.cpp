#include "shieldsim/dse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "shieldsim/attacker.hpp"
#include "shieldsim/parallel.hpp"
#include "shieldsim/simulation.hpp"

namespace shieldsim {

std::string DseCandidate::name() const {
    std::ostringstream out;
    out << placement << "-" << static_cast<long long>(f_ref / 1e6) << "MHz-" << ro_count;
    return out.str();
}

namespace {

Scenario candidate_scenario(const Scenario &base, const DseCandidate &c) {
    Scenario sc = base;
    sc.mode = DefenseMode::None; // the sweep grades the sensing path alone
    sc.placement = c.placement;
    sc.monitor.m = c.ro_count;
    sc.monitor.f_ref = c.f_ref;
    sc.monitor.ro_locations =
        resolve_placement(c.placement, c.ro_count, sc.victim_loc, sc.plan);
    sc.monitor.validate();
    sc.ticks_per_window(); // validates the window against f_app
    return sc;
}

} // namespace

CandidateMetrics evaluate_candidate(const Scenario &base, const DseCandidate &c,
                                    int trials) {
    if (trials < 1)
        throw std::invalid_argument("evaluate_candidate: trials must be >= 1");
    const Scenario sc = candidate_scenario(base, c);
    const std::int64_t W = sc.ticks_per_window();

    // Single-trace extractions; trial seeds are candidate-independent so the
    // same keys and plaintext order face every candidate.
    std::vector<double> errors(static_cast<std::size_t>(trials), 0.0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
        const RsaKey key = sc.make_key(
            Rng::derive(sc.experiment.seed, kSeedKey, static_cast<std::uint64_t>(trial)));
        const std::uint64_t trace_seed = Rng::derive(
            Rng::derive(sc.experiment.seed, kSeedTrial, static_cast<std::uint64_t>(trial)),
            kSeedTrace, 0);
        const SimResult run = simulate_trace(sc, key, trace_seed);
        const SlotTiming timing = slot_timing(run.schedule, W);
        const std::vector<double> values(run.trace.samples.begin(),
                                         run.trace.samples.end());
        const KeyGuess guess = extract_key_from_average(values, timing);
        errors[trial] = static_cast<double>(hamming_distance(guess.bits, key.d_bits));
    });
    double err_sum = 0.0;
    for (double e : errors)
        err_sum += e;

    CandidateMetrics metrics;
    metrics.avg_bit_errors = err_sum / static_cast<double>(trials);
    const EffortResult effort =
        attack_effort(sc, base.dse.effort_trials, base.dse.effort_n_max);
    metrics.traces_to_extract = effort.mean_traces;
    metrics.ff_count = static_cast<long long>(sc.monitor.m) * sc.monitor.sensor.n_ff +
                       sc.overhead.c_ref_width_ff;
    metrics.avg_power =
        sc.monitor.self_power_per_ro * static_cast<double>(sc.monitor.m);
    return metrics;
}

std::vector<double> dse_costs(const std::vector<CandidateMetrics> &metrics,
                              double w_accuracy, double w_area, double w_power) {
    if (metrics.empty())
        throw std::invalid_argument("dse_costs: empty sweep");
    if (w_accuracy < 0 || w_area < 0 || w_power < 0 ||
        (w_accuracy == 0 && w_area == 0 && w_power == 0))
        throw std::invalid_argument("dse_costs: weights must be >= 0 and not all zero");

    auto normalized = [&](auto get) {
        double lo = get(metrics.front());
        double hi = lo;
        for (const auto &m : metrics) {
            lo = std::min(lo, get(m));
            hi = std::max(hi, get(m));
        }
        std::vector<double> out;
        out.reserve(metrics.size());
        for (const auto &m : metrics)
            out.push_back(hi > lo ? (get(m) - lo) / (hi - lo) : 0.0);
        return out;
    };
    const std::vector<double> acc =
        normalized([](const CandidateMetrics &m) { return m.avg_bit_errors; });
    const std::vector<double> area = normalized(
        [](const CandidateMetrics &m) { return static_cast<double>(m.ff_count); });
    const std::vector<double> power =
        normalized([](const CandidateMetrics &m) { return m.avg_power; });

    std::vector<double> costs(metrics.size());
    for (std::size_t i = 0; i < metrics.size(); ++i)
        costs[i] = w_accuracy * acc[i] + w_area * area[i] + w_power * power[i];
    return costs;
}

namespace {

std::vector<RankedCandidate> rank(std::vector<RankedCandidate> list) {
    std::stable_sort(list.begin(), list.end(),
                     [](const RankedCandidate &a, const RankedCandidate &b) {
                         if (a.cost != b.cost)
                             return a.cost < b.cost;
                         if (a.metrics.ff_count != b.metrics.ff_count)
                             return a.metrics.ff_count < b.metrics.ff_count;
                         if (a.metrics.avg_power != b.metrics.avg_power)
                             return a.metrics.avg_power < b.metrics.avg_power;
                         return a.candidate.name() < b.candidate.name();
                     });
    for (std::size_t i = 0; i < list.size(); ++i)
        list[i].rank = static_cast<int>(i) + 1;
    return list;
}

DseResult explore_exhaustive(const Scenario &base) {
    std::vector<DseCandidate> candidates;
    for (const std::string &p : base.dse.placements)
        for (double f : base.dse.f_refs)
            for (int m : base.dse.ro_counts)
                candidates.push_back(DseCandidate{p, f, m});

    std::vector<CandidateMetrics> metrics(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i)
        metrics[i] = evaluate_candidate(base, candidates[i], base.dse.trials);

    const std::vector<double> costs =
        dse_costs(metrics, base.dse.w_accuracy, base.dse.w_area, base.dse.w_power);

    DseResult result;
    result.degenerate_normalization = candidates.size() == 1;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        result.ranked.push_back(RankedCandidate{candidates[i], metrics[i], costs[i], 0});
    result.ranked = rank(std::move(result.ranked));
    return result;
}

// Fix-one-parameter walk: each axis is swept with the others held at the
// incumbent, the winner becomes the incumbent. Kept for fidelity with the
// iterative procedure; the exhaustive sweep is the default.
DseResult explore_coordinate(const Scenario &base) {
    DseCandidate current{base.dse.placements.front(), base.dse.f_refs.front(),
                         base.dse.ro_counts.front()};
    std::vector<RankedCandidate> evaluated;

    auto sweep_axis = [&](auto apply, std::size_t count) {
        std::vector<DseCandidate> axis;
        for (std::size_t i = 0; i < count; ++i) {
            DseCandidate c = current;
            apply(c, i);
            axis.push_back(c);
        }
        std::vector<CandidateMetrics> metrics(axis.size());
        for (std::size_t i = 0; i < axis.size(); ++i)
            metrics[i] = evaluate_candidate(base, axis[i], base.dse.trials);
        const std::vector<double> costs =
            dse_costs(metrics, base.dse.w_accuracy, base.dse.w_area, base.dse.w_power);
        std::size_t best = 0;
        for (std::size_t i = 1; i < axis.size(); ++i)
            if (costs[i] < costs[best])
                best = i;
        for (std::size_t i = 0; i < axis.size(); ++i)
            evaluated.push_back(RankedCandidate{axis[i], metrics[i], costs[i], 0});
        current = axis[best];
    };

    sweep_axis([&](DseCandidate &c, std::size_t i) { c.placement = base.dse.placements[i]; },
               base.dse.placements.size());
    sweep_axis([&](DseCandidate &c, std::size_t i) { c.f_ref = base.dse.f_refs[i]; },
               base.dse.f_refs.size());
    sweep_axis([&](DseCandidate &c, std::size_t i) { c.ro_count = base.dse.ro_counts[i]; },
               base.dse.ro_counts.size());

    DseResult result;
    result.degenerate_normalization = evaluated.size() == 1;
    result.ranked = rank(std::move(evaluated));
    return result;
}

} // namespace

DseResult explore(const Scenario &base) {
    return base.dse.exhaustive ? explore_exhaustive(base) : explore_coordinate(base);
}

} // namespace shieldsim
