#ifndef SHIELDSIM_DEFENSE_HPP
#define SHIELDSIM_DEFENSE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "shieldsim/floorplan.hpp"
#include "shieldsim/rng.hpp"

namespace shieldsim {

struct NoiseGenBank {
    int sets = 4;          // s
    double p_set = 0.0;    // watts per active set
    GridLoc location;
    int ro_per_set = 16;   // used by overhead accounting only
    double budget = 0.0;   // cap on sets * p_set (the multiplier power)

    void validate() const;
};

// Power drawn with `active_k` sets enabled. Rejects active_k outside [0, s].
double noise_power(int active_k, const NoiseGenBank &bank);

enum class ShieldState { Idle, Ramping };

enum class ShieldEvent { None, Detect, Ramp, Reset };

// Run-time controller: detects the victim going quiet (monitor count above
// the threshold), ramps noise sets one per sample, and releases everything
// on the first below-threshold sample or after the full ramp. The effective
// threshold tracks the expected count shift of the active sets:
//   theta_k = theta0 - k * delta.
class ShieldController {
  public:
    ShieldController(double theta0, double delta, int sets);

    // Consumes one monitor sample; exactly one transition per call.
    ShieldEvent step(double sample);

    ShieldState state() const { return state_; }
    int active_k() const { return active_k_; }
    double theta0() const { return theta0_; }
    double effective_threshold() const { return theta0_ - active_k_ * delta_; }

  private:
    double theta0_;
    double delta_;
    int sets_;
    ShieldState state_ = ShieldState::Idle;
    int active_k_ = 0;
};

struct RandomNoiseConfig {
    int n_ros = 96;
    double p_per_ro = 0.0; // watts
    double duty = 0.5;     // on-probability per RO per sample period

    void validate() const;
};

// Number of noise ROs enabled for the next sample period:
// Binomial(n_ros, duty), independent across periods.
int random_noise_step(const RandomNoiseConfig &cfg, Rng &rng);

// One controller event as logged during a run. For Detect events the
// simulation also records the first sample index fully under the activated
// noise; effect_sample is -1 for the other event kinds.
struct ControllerLogEntry {
    std::int64_t sample_index = 0;
    ShieldEvent event = ShieldEvent::None;
    int active_k = 0;
    double threshold = 0.0;
    std::int64_t effect_sample = -1;
};

const char *event_name(ShieldEvent e);

// Detection-to-effect delays observed in a run (in samples).
struct ReactionStats {
    bool has_data = false;
    double mean_samples = 0.0;
    std::vector<std::int64_t> delays;
};

// Mean reaction time over all detect events; explicit no-data result when
// the log holds none.
ReactionStats measure_reaction_time(const std::vector<ControllerLogEntry> &log);

// Samples between reading the triggering sample and the first sample whose
// whole window sees the new noise level.
std::int64_t actuation_lag_samples(std::int64_t actuation_ticks,
                                   std::int64_t ticks_per_sample);

} // namespace shieldsim

#endif
