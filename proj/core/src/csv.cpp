#include "shieldsim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace shieldsim {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

} // namespace

void write_trace_csv(const std::string &path, const Trace &trace,
                     std::int64_t ticks_per_window) {
    std::ofstream out = open_out(path);
    out << "# scenario_id = " << trace.scenario_id << "\n";
    out << "# seed = " << trace.seed << "\n";
    out << "# config_hash = " << trace.config_hash << "\n";
    out << "# sample_period_s = " << fmt_double(trace.sample_period) << "\n";
    out << "tick_index,sample\n";
    for (std::size_t i = 0; i < trace.samples.size(); ++i)
        out << static_cast<std::int64_t>(i) * ticks_per_window << "," << trace.samples[i]
            << "\n";
}

Trace read_trace_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read trace '" + path + "'");
    Trace trace;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                continue;
            const std::string key = line.substr(1, eq - 1);
            const std::string value = line.substr(eq + 1);
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                const auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
            };
            const std::string k = trim(key);
            if (k == "scenario_id")
                trace.scenario_id = trim(value);
            else if (k == "seed")
                trace.seed = std::stoull(trim(value));
            else if (k == "config_hash")
                trace.config_hash = trim(value);
            else if (k == "sample_period_s")
                trace.sample_period = std::stod(trim(value));
            continue;
        }
        if (!header_seen) {
            header_seen = true; // "tick_index,sample"
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed trace row in '" + path + "'");
        trace.samples.push_back(
            static_cast<std::uint32_t>(std::stoul(line.substr(comma + 1))));
    }
    return trace;
}

void write_controller_log_csv(const std::string &path,
                              const std::vector<ControllerLogEntry> &log) {
    std::ofstream out = open_out(path);
    out << "sample_index,event,active_k,threshold\n";
    for (const auto &entry : log)
        out << entry.sample_index << "," << event_name(entry.event) << "," << entry.active_k
            << "," << fmt_double(entry.threshold) << "\n";
}

void write_csv(const std::string &path, const std::string &header,
               const std::vector<std::string> &rows) {
    std::ofstream out = open_out(path);
    out << header << "\n";
    for (const auto &row : rows)
        out << row << "\n";
}

void write_manifest(const std::string &path, const Manifest &manifest,
                    const std::string &resolved_config_text) {
    nlohmann::ordered_json doc;
    doc["tool_version"] = manifest.tool_version;
    doc["config_hash"] = manifest.config_hash;
    doc["seed"] = manifest.seed;
    doc["scenario_id"] = manifest.scenario_id;
    doc["ground_truth_key_hex"] = manifest.key_hex;
    doc["outputs"] = manifest.outputs;
    doc["resolved_config"] = resolved_config_text;
    std::ofstream out = open_out(path);
    out << doc.dump(2) << "\n";
}

} // namespace shieldsim
