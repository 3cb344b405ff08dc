#include "shieldsim/simulation.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

#include "shieldsim/pdn.hpp"

namespace shieldsim {

// Sources are kept out of PdnState here so the inner loop is O(m) per tick:
// the victim and the noise bank are single movable sources, the monitor's
// own ROs contribute a settled static drop. Equivalence with voltage_at is
// covered by tests.
SimResult simulate_trace(const Scenario &sc, const RsaKey &key, std::uint64_t trace_seed) {
    const std::int64_t W = sc.ticks_per_window();
    const std::int64_t horizon = sc.horizon_windows();
    const int m = sc.monitor.m;
    const int shift = log2_exact(m);
    const RoSensorParams &sensor = sc.monitor.sensor;
    const PdnParams &pdn = sc.pdn;

    if (sc.mode == DefenseMode::Shield && !sc.theta_set)
        throw ConfigError("simulate_trace: shield scenario is not calibrated "
                          "(defense.theta0)");

    Rng rng(trace_seed);

    // Draw order per trace: head jitter, then per window a binomial draw in
    // random mode followed by m counter phases.
    std::int64_t head_windows = 0;
    if (sc.start_jitter_windows > 0)
        head_windows = static_cast<std::int64_t>(
            rng.next_below(static_cast<std::uint64_t>(sc.start_jitter_windows)));

    SimResult result;
    result.head_idle_ticks = head_windows * W;
    result.schedule = PowerSchedule::build(key, sc.victim, result.head_idle_ticks);

    // Static attenuation of each source toward every RO.
    std::vector<double> att_victim(m), att_noise(m);
    for (int i = 0; i < m; ++i) {
        const GridLoc &ro = sc.monitor.ro_locations[static_cast<std::size_t>(i)];
        if (!sc.plan.contains(ro))
            throw ConfigError("monitor RO off the floorplan");
        att_victim[i] = attenuation(manhattan(ro, sc.victim_loc), pdn.lambda);
        att_noise[i] = attenuation(manhattan(ro, sc.noise_loc), pdn.lambda);
    }

    // Monitor self-load: free-running ROs are settled before tick 0, so they
    // contribute a constant resistive drop.
    std::vector<double> self_drop(m, 0.0);
    if (sc.monitor.self_power_per_ro > 0.0) {
        const double i_self = sc.monitor.self_power_per_ro / pdn.v_nom;
        for (int i = 0; i < m; ++i) {
            double acc = 0.0;
            for (int j = 0; j < m; ++j) {
                const int d = manhattan(sc.monitor.ro_locations[static_cast<std::size_t>(i)],
                                        sc.monitor.ro_locations[static_cast<std::size_t>(j)]);
                acc += attenuation(d, pdn.lambda) * pdn.r_eff * i_self;
            }
            self_drop[i] = acc;
        }
    }
    result.avg_monitor_power =
        sc.monitor.self_power_per_ro * static_cast<double>(m);

    // Defense state.
    ShieldController controller(sc.theta0, sc.delta, sc.bank.sets);
    struct PowerChange {
        std::int64_t tick;
        double watts;
    };
    std::deque<PowerChange> pending;
    double noise_watts = 0.0;

    // The victim enters the horizon settled at idle power.
    double i_victim_prev = sc.victim.p_idle / pdn.v_nom;
    double i_noise_prev = 0.0;

    const double kdt = sensor.k * pdn.tick_period;
    const double f0T = sensor.f0 * pdn.tick_period;
    const double max_count = static_cast<double>(sensor.max_count());

    std::vector<double> acc(static_cast<std::size_t>(m));
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(m));
    result.trace.samples.reserve(static_cast<std::size_t>(horizon));
    double noise_tick_sum = 0.0;

    for (std::int64_t w = 0; w < horizon; ++w) {
        if (sc.mode == DefenseMode::Random) {
            const int on = random_noise_step(sc.random_cfg, rng);
            noise_watts = static_cast<double>(on) * sc.random_cfg.p_per_ro;
        }
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::int64_t t = 0; t < W; ++t) {
            const std::int64_t tick = w * W + t;
            while (!pending.empty() && pending.front().tick <= tick) {
                noise_watts = pending.front().watts;
                pending.pop_front();
            }
            const double p_victim = result.schedule.power_at(tick);
            const double i_victim = p_victim / pdn.v_nom;
            const double i_noise = noise_watts / pdn.v_nom;
            const double victim_term =
                pdn.r_eff * i_victim +
                pdn.l_eff * (i_victim - i_victim_prev) / pdn.tick_period;
            const double noise_term =
                pdn.r_eff * i_noise +
                pdn.l_eff * (i_noise - i_noise_prev) / pdn.tick_period;
            for (int i = 0; i < m; ++i) {
                double v = pdn.v_nom - att_victim[i] * victim_term -
                           att_noise[i] * noise_term - self_drop[i];
                if (v < 0.0)
                    v = 0.0;
                acc[static_cast<std::size_t>(i)] += kdt * v + f0T;
            }
            i_victim_prev = i_victim;
            i_noise_prev = i_noise;
            noise_tick_sum += noise_watts;
        }
        for (int i = 0; i < m; ++i) {
            const double raw = std::floor(acc[static_cast<std::size_t>(i)] + rng.next_unit());
            counts[static_cast<std::size_t>(i)] =
                raw <= 0.0 ? 0u
                           : (raw >= max_count ? sensor.max_count()
                                               : static_cast<std::uint32_t>(raw));
        }
        std::uint64_t sum = 0;
        for (auto c : counts)
            sum += c;
        const std::uint32_t sample = static_cast<std::uint32_t>(sum >> shift);
        result.trace.samples.push_back(sample);

        if (sc.mode == DefenseMode::Shield) {
            const int k_before = controller.active_k();
            const ShieldEvent ev = controller.step(static_cast<double>(sample));
            if (ev != ShieldEvent::None) {
                ControllerLogEntry entry;
                entry.sample_index = w;
                entry.event = ev;
                entry.active_k = controller.active_k();
                entry.threshold = ev == ShieldEvent::Reset ? controller.theta0()
                                                           : controller.effective_threshold();
                if (ev == ShieldEvent::Detect)
                    entry.effect_sample = w + actuation_lag_samples(sc.actuation_ticks, W);
                result.events.push_back(entry);
            }
            if (controller.active_k() != k_before) {
                pending.push_back(PowerChange{
                    (w + 1) * W + sc.actuation_ticks,
                    noise_power(controller.active_k(), sc.bank)});
            }
        }
    }

    result.avg_noise_power =
        noise_tick_sum / static_cast<double>(horizon * W);
    result.trace.sample_period = sc.monitor.sample_period();
    result.trace.scenario_id = sc.scenario_id;
    result.trace.seed = trace_seed;
    result.trace.config_hash = sc.config_hash;
    return result;
}

Calibration calibrate(const Scenario &sc) {
    if (sc.victim.p_mult <= sc.victim.p_square)
        throw ConfigError("calibrate: victim power contrast is zero, calibration "
                          "impossible");

    // Dry encryption with a known key; no head jitter so window classes are
    // exact. An alternating exponent guarantees both classes exist.
    Scenario dry = sc;
    dry.mode = DefenseMode::None;
    dry.start_jitter_windows = 0;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(sc.key_bits));
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = (i % 2 == 0) ? 1 : 0;
    RsaKey key;
    key.d_bits = bits;
    key.modulus = BigUint{1}.shifted_left(sc.key_bits + 1);

    const std::uint64_t seed0 = Rng::derive(sc.experiment.seed, kSeedCalibration, 0);
    const SimResult run = simulate_trace(dry, key, seed0);
    const std::int64_t W = dry.ticks_per_window();

    // Multiplier-idle windows (inside squaring segments) against windows
    // fully inside multiply segments: the peak and valley levels of the
    // monitor output.
    double mult_sum = 0.0, quiet_sum = 0.0;
    std::int64_t mult_n = 0, quiet_n = 0;
    std::int64_t cursor = 0;
    for (const PowerSegment &seg : run.schedule.segments()) {
        const bool is_mult = seg.watts == sc.victim.p_mult && seg.bit_index >= 0;
        const bool is_square = seg.watts == sc.victim.p_square && seg.bit_index >= 0;
        if (is_mult || is_square) {
            const std::int64_t first = (cursor + W - 1) / W;
            const std::int64_t last = (cursor + seg.duration) / W;
            for (std::int64_t w = first; w < last; ++w) {
                const double v =
                    static_cast<double>(run.trace.samples[static_cast<std::size_t>(w)]);
                if (is_mult) {
                    mult_sum += v;
                    ++mult_n;
                } else {
                    quiet_sum += v;
                    ++quiet_n;
                }
            }
        }
        cursor += seg.duration;
    }
    if (mult_n == 0 || quiet_n == 0)
        throw ConfigError("calibrate: dry run produced no multiply or idle windows");

    const double mult_mean = mult_sum / static_cast<double>(mult_n);
    const double quiet_mean = quiet_sum / static_cast<double>(quiet_n);
    if (quiet_mean <= mult_mean + 1e-12)
        throw ConfigError("calibrate: victim contrast not observable at the monitor");

    Calibration cal;
    cal.theta0 = 0.5 * (quiet_mean + mult_mean);

    // Expected count shift of one active set, from the design model: the
    // integer readout floors a sub-LSB shift out of a measured average, so
    // the defender derives it from its own board constants instead.
    const double window = sc.monitor.sample_period();
    double att_sum = 0.0;
    for (const GridLoc &ro : sc.monitor.ro_locations)
        att_sum += attenuation(manhattan(ro, sc.noise_loc), sc.pdn.lambda);
    const double att_mean = att_sum / static_cast<double>(sc.monitor.m);
    cal.delta = sc.monitor.sensor.k * window * att_mean * sc.pdn.r_eff * sc.bank.p_set /
                sc.pdn.v_nom;
    if (cal.delta <= 0.0)
        throw ConfigError("calibrate: one noise set produces no observable count shift");
    return cal;
}

Scenario calibrated(const Scenario &sc) {
    if (sc.mode != DefenseMode::Shield || sc.theta_set)
        return sc;
    if (!sc.auto_calibrate)
        throw ConfigError("defense.theta0 is required for mode=shield unless "
                          "defense.auto_calibrate is enabled");
    const Calibration cal = calibrate(sc);
    Scenario out = sc;
    out.theta0 = cal.theta0;
    out.delta = cal.delta;
    out.theta_set = true;
    const std::string text = canonical_config_text(out);
    out.config_hash = hash_hex(fnv1a64(text));
    out.scenario_id = std::string(mode_name(out.mode)) + "-" + out.config_hash.substr(0, 8);
    return out;
}

} // namespace shieldsim
