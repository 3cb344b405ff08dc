#ifndef SHIELDSIM_SIMULATION_HPP
#define SHIELDSIM_SIMULATION_HPP

#include <cstdint>
#include <vector>

#include "shieldsim/defense.hpp"
#include "shieldsim/monitor.hpp"
#include "shieldsim/rsa.hpp"
#include "shieldsim/scenario.hpp"

namespace shieldsim {

// Seed-stream purposes; every random draw in a run is keyed by
// (experiment.seed, purpose, index) so results are independent of worker
// scheduling.
enum : std::uint64_t {
    kSeedKey = 1,
    kSeedTrace = 2,
    kSeedCalibration = 3,
    kSeedTvlaKey = 4,
    kSeedTvlaFixed = 5,
    kSeedTvlaRandom = 6,
    kSeedTrial = 7,
};

struct SimResult {
    Trace trace;
    std::vector<ControllerLogEntry> events;
    PowerSchedule schedule;
    std::int64_t head_idle_ticks = 0;
    double avg_noise_power = 0.0;   // defense noise, time-averaged watts
    double avg_monitor_power = 0.0; // monitor self-load, watts
};

// One end-to-end acquisition: victim schedule -> PDN -> RO counters ->
// averaged samples, with the configured defense in the loop. Deterministic
// given (scenario, key, trace_seed). Shield mode requires a calibrated
// scenario (theta_set).
SimResult simulate_trace(const Scenario &sc, const RsaKey &key, std::uint64_t trace_seed);

struct Calibration {
    double theta0 = 0.0;
    double delta = 0.0;
};

// Offline stage: dry run with a known key pins theta0 at the midpoint of the
// idle-window and multiply-window sample means; delta is the sample shift
// caused by one active noise set. Throws ConfigError when the victim shows
// no observable contrast.
Calibration calibrate(const Scenario &sc);

// Returns the scenario with theta0/delta resolved (no-op unless shield mode
// with auto calibration pending).
Scenario calibrated(const Scenario &sc);

} // namespace shieldsim

#endif
