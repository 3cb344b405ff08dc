#ifndef SHIELDSIM_CSV_HPP
#define SHIELDSIM_CSV_HPP

#include <string>
#include <vector>

#include "shieldsim/defense.hpp"
#include "shieldsim/monitor.hpp"

namespace shieldsim {

// Deterministic decimal formatting shared by every writer, so identical
// runs produce byte-identical files.
std::string fmt_double(double v);

// Trace CSV: '#'-prefixed metadata, then "tick_index,sample" rows. The tick
// index is the first tick of the sample's reference window.
void write_trace_csv(const std::string &path, const Trace &trace,
                     std::int64_t ticks_per_window);
Trace read_trace_csv(const std::string &path);

// Controller event log: "sample_index,event,active_k,threshold".
void write_controller_log_csv(const std::string &path,
                              const std::vector<ControllerLogEntry> &log);

// Generic small report writer: header plus preformatted rows.
void write_csv(const std::string &path, const std::string &header,
               const std::vector<std::string> &rows);

struct Manifest {
    std::string tool_version;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string key_hex;
    std::string scenario_id;
    std::vector<std::string> outputs;
};

void write_manifest(const std::string &path, const Manifest &manifest,
                    const std::string &resolved_config_text);

} // namespace shieldsim

#endif
