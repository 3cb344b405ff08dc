#include "shieldsim/monitor.hpp"

#include <cmath>
#include <stdexcept>

namespace shieldsim {

void RoSensorParams::validate() const {
    if (k <= 0.0)
        throw std::invalid_argument("monitor.k must be > 0");
    if (f0 < 0.0)
        throw std::invalid_argument("monitor.f0 must be >= 0");
    if (n_ff < 1)
        throw std::invalid_argument("monitor.n_ff must be >= 1");
}

int log2_exact(int m) {
    if (m < 1 || (m & (m - 1)) != 0)
        throw std::invalid_argument("monitor RO count must be a power of 2");
    int shift = 0;
    while ((1 << shift) < m)
        ++shift;
    return shift;
}

void MonitorConfig::validate() const {
    log2_exact(m);
    if (static_cast<int>(ro_locations.size()) != m)
        throw std::invalid_argument("monitor.ro_locations must list exactly m coordinates");
    if (f_ref <= 0.0)
        throw std::invalid_argument("monitor.f_ref must be > 0");
    if (c_ref < 1)
        throw std::invalid_argument("monitor.c_ref must be >= 1");
    if (self_power_per_ro < 0.0)
        throw std::invalid_argument("monitor.self_power_per_ro must be >= 0");
    sensor.validate();
}

double ro_frequency(double volts, const RoSensorParams &sensor) {
    return sensor.k * volts + sensor.f0;
}

std::uint32_t ro_count(double f_ro, double f_ref, std::int64_t c_ref, double phase,
                       const RoSensorParams &sensor) {
    if (!std::isfinite(f_ro))
        throw std::invalid_argument("ro_count: non-finite oscillator frequency");
    if (f_ref <= 0.0 || c_ref < 1)
        throw std::invalid_argument("ro_count: invalid reference window");
    if (f_ro < 0.0)
        f_ro = 0.0;
    const double window = static_cast<double>(c_ref) / f_ref;
    const double raw = std::floor(f_ro * window + phase);
    const double cap = static_cast<double>(sensor.max_count());
    if (raw >= cap)
        return sensor.max_count();
    return raw <= 0.0 ? 0u : static_cast<std::uint32_t>(raw);
}

std::uint32_t monitor_sample(std::span<const std::uint32_t> counts) {
    const int m = static_cast<int>(counts.size());
    const int shift = log2_exact(m);
    std::uint64_t sum = 0;
    for (auto c : counts)
        sum += c;
    return static_cast<std::uint32_t>(sum >> shift);
}

} // namespace shieldsim
