#include "shieldsim/defense.hpp"

#include <stdexcept>

namespace shieldsim {

void NoiseGenBank::validate() const {
    if (sets < 1)
        throw std::invalid_argument("defense.sets must be >= 1");
    if (p_set < 0.0)
        throw std::invalid_argument("defense.p_set must be >= 0");
    if (ro_per_set < 1)
        throw std::invalid_argument("defense.ro_per_set must be >= 1");
    if (budget > 0.0 && sets * p_set > budget * (1.0 + 1e-12))
        throw std::invalid_argument("defense noise bank exceeds its power budget");
}

double noise_power(int active_k, const NoiseGenBank &bank) {
    if (active_k < 0 || active_k > bank.sets)
        throw std::invalid_argument("noise_power: active set count out of range");
    return active_k * bank.p_set;
}

ShieldController::ShieldController(double theta0, double delta, int sets)
    : theta0_(theta0), delta_(delta), sets_(sets) {
    if (sets < 1)
        throw std::invalid_argument("ShieldController: need at least one noise set");
}

ShieldEvent ShieldController::step(double sample) {
    if (sample < 0.0)
        throw std::invalid_argument("ShieldController: negative sample");
    if (state_ == ShieldState::Idle) {
        if (sample > theta0_) {
            state_ = ShieldState::Ramping;
            active_k_ = 1;
            return ShieldEvent::Detect;
        }
        return ShieldEvent::None;
    }
    // Ramping: compare against the threshold adjusted for the sets already on.
    const double theta_k = effective_threshold();
    if (sample > theta_k && active_k_ < sets_) {
        ++active_k_;
        return ShieldEvent::Ramp;
    }
    // Either the victim became active again (sample at or below the
    // threshold) or the ramp is exhausted; both release the whole bank and
    // restore the initial threshold.
    state_ = ShieldState::Idle;
    active_k_ = 0;
    return ShieldEvent::Reset;
}

void RandomNoiseConfig::validate() const {
    if (n_ros < 0)
        throw std::invalid_argument("defense.n_ros must be >= 0");
    if (p_per_ro < 0.0)
        throw std::invalid_argument("defense.p_per_ro must be >= 0");
    if (duty < 0.0 || duty > 1.0)
        throw std::invalid_argument("defense.duty must lie in [0, 1]");
}

int random_noise_step(const RandomNoiseConfig &cfg, Rng &rng) {
    return rng.next_binomial(cfg.n_ros, cfg.duty);
}

const char *event_name(ShieldEvent e) {
    switch (e) {
    case ShieldEvent::Detect:
        return "DETECT";
    case ShieldEvent::Ramp:
        return "RAMP";
    case ShieldEvent::Reset:
        return "RESET";
    default:
        return "NONE";
    }
}

std::int64_t actuation_lag_samples(std::int64_t actuation_ticks,
                                   std::int64_t ticks_per_sample) {
    if (ticks_per_sample < 1)
        throw std::invalid_argument("actuation_lag_samples: invalid sample width");
    // A detection at sample t is acted on after the sample is read; the bank
    // switches at tick (t+1)*W + actuation and the first sample fully under
    // noise is the next whole window after that.
    return 1 + (actuation_ticks + ticks_per_sample - 1) / ticks_per_sample;
}

ReactionStats measure_reaction_time(const std::vector<ControllerLogEntry> &log) {
    ReactionStats stats;
    double sum = 0.0;
    for (const auto &entry : log) {
        if (entry.event != ShieldEvent::Detect || entry.effect_sample < 0)
            continue;
        const std::int64_t delay = entry.effect_sample - entry.sample_index;
        stats.delays.push_back(delay);
        sum += static_cast<double>(delay);
    }
    if (!stats.delays.empty()) {
        stats.has_data = true;
        stats.mean_samples = sum / static_cast<double>(stats.delays.size());
    }
    return stats;
}

} // namespace shieldsim
