#ifndef SHIELDSIM_SCENARIO_HPP
#define SHIELDSIM_SCENARIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shieldsim/defense.hpp"
#include "shieldsim/floorplan.hpp"
#include "shieldsim/monitor.hpp"
#include "shieldsim/pdn.hpp"
#include "shieldsim/rsa.hpp"

namespace shieldsim {

// Configuration problems surface as ConfigError with the offending
// section.key in the message; the CLI maps them to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

enum class DefenseMode { None, Random, Shield };

const char *mode_name(DefenseMode m);

struct ExperimentParams {
    std::uint64_t seed = 0;
    int trials = 20;
    int n_max = 2000;
    int traces = 100;
    int trailing_idle_windows = 40;
};

struct DseParams {
    std::vector<std::string> placements{"far", "close1", "close2"};
    std::vector<double> f_refs{10e6, 100e6};
    std::vector<int> ro_counts{16, 32, 64};
    double w_accuracy = 0.9;
    double w_area = 0.05;
    double w_power = 0.05;
    int trials = 200;
    bool exhaustive = true; // false selects the fix-one-parameter walk
    int effort_trials = 10;
    int effort_n_max = 10;
};

// Declared flip-flop inventory used by the overhead accounting. Kept in the
// config so the hardware assumptions stay auditable.
struct OverheadParams {
    int c_ref_width_ff = 16;
    int ctl_ffs = 20;
    int set_enable_ffs_per_set = 1;
    int ffs_per_noise_ro = 8;
    int lfsr_width_ff = 16;
};

struct Scenario {
    Floorplan plan;
    GridLoc victim_loc;
    GridLoc noise_loc;

    PdnParams pdn;
    double f_app = 10e6;

    VictimPowerParams victim;
    int key_bits = 1024;
    std::string key_hex; // empty = drawn from the run seed
    int start_jitter_windows = 8;
    bool jitter_explicit = false;

    std::string placement = "close2";
    MonitorConfig monitor;

    DefenseMode mode = DefenseMode::None;
    NoiseGenBank bank;
    double theta0 = 0.0;
    double delta = 0.0;
    bool theta_set = false;
    bool auto_calibrate = true;
    std::int64_t actuation_ticks = 3;
    RandomNoiseConfig random_cfg;

    int bit_error_tolerance = 0;

    ExperimentParams experiment;
    DseParams dse;
    OverheadParams overhead;

    std::string config_hash; // FNV-1a 64 of the canonical text
    std::string scenario_id;

    std::int64_t ticks_per_window() const;
    // Fixed per-scenario trace length in windows, independent of the key.
    std::int64_t horizon_windows() const;
    std::int64_t max_schedule_ticks() const;

    RsaKey make_key(std::uint64_t key_seed) const;

    Scenario with_mode(DefenseMode m) const;
};

// Strict parse: unknown sections or keys are rejected, defaults fill
// everything else, [experiment].seed is mandatory.
Scenario parse_scenario(const std::string &text);
Scenario parse_scenario_file(const std::string &path);

// Resolved config as deterministic text; parsing it back yields the same
// scenario. Also the input of the config hash.
std::string canonical_config_text(const Scenario &sc);

std::uint64_t fnv1a64(const std::string &text);
std::string hash_hex(std::uint64_t value);

// Named monitor placements around the victim. close2 spreads the ROs over a
// constant-distance ring near the victim, close1 packs them in a block at a
// middle distance, far pushes the block to the fabric corner.
std::vector<GridLoc> resolve_placement(const std::string &name, int m,
                                       const GridLoc &victim, const Floorplan &plan);

} // namespace shieldsim

#endif
