#ifndef SHIELDSIM_MONITOR_HPP
#define SHIELDSIM_MONITOR_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shieldsim/floorplan.hpp"

namespace shieldsim {

struct RoSensorParams {
    double k = 200e6;  // Hz per volt
    double f0 = 100e6; // Hz offset
    int n_ff = 16;     // flip-flops per counter chain

    std::uint32_t max_count() const { return (n_ff >= 32) ? 0xffffffffu : ((1u << n_ff) - 1u); }
    void validate() const;
};

struct MonitorConfig {
    int m = 32; // RO counters, power of two
    std::vector<GridLoc> ro_locations;
    double f_ref = 10e6; // Hz
    std::int64_t c_ref = 10;
    RoSensorParams sensor;
    double self_power_per_ro = 0.0; // watts injected per RO when > 0

    double sample_period() const { return static_cast<double>(c_ref) / f_ref; }
    void validate() const;
};

struct Trace {
    std::vector<std::uint32_t> samples;
    double sample_period = 0.0; // seconds
    std::string scenario_id;
    std::uint64_t seed = 0;
    std::string config_hash;

    std::size_t size() const { return samples.size(); }
};

// Affine realization of the RO's voltage sensitivity: f = k*v + f0.
double ro_frequency(double volts, const RoSensorParams &sensor);

// Count captured over one reference window of c_ref cycles: floor(f*T + phase)
// saturated at the counter width. `phase` models the sub-count alignment of
// the window against the oscillator and must lie in [0, 1).
std::uint32_t ro_count(double f_ro, double f_ref, std::int64_t c_ref, double phase,
                       const RoSensorParams &sensor);

// Average of m counts implemented as a right shift; m must be a power of two
// and match counts.size().
std::uint32_t monitor_sample(std::span<const std::uint32_t> counts);

int log2_exact(int m); // throws if m is not a power of two

} // namespace shieldsim

#endif
