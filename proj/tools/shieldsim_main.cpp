// Command-line front end: scenario simulation, key extraction, monitor DSE,
// metric evaluation and offline calibration. Every command writes its
// outputs plus a run manifest into --out; identical config and seed give
// byte-identical files.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shieldsim/attacker.hpp"
#include "shieldsim/csv.hpp"
#include "shieldsim/dse.hpp"
#include "shieldsim/eval.hpp"
#include "shieldsim/scenario.hpp"
#include "shieldsim/simulation.hpp"

namespace fs = std::filesystem;
using namespace shieldsim;

namespace {

constexpr const char *kToolVersion = "0.1.0";

struct OutputSet {
    fs::path dir;
    std::vector<std::string> files;

    explicit OutputSet(const std::string &out) : dir(out) {
        fs::create_directories(dir);
    }
    std::string path(const std::string &name) {
        files.push_back(name);
        return (dir / name).string();
    }
    void finish(const Scenario &sc, const std::string &key_hex) {
        Manifest manifest;
        manifest.tool_version = kToolVersion;
        manifest.config_hash = sc.config_hash;
        manifest.seed = sc.experiment.seed;
        manifest.scenario_id = sc.scenario_id;
        manifest.key_hex = key_hex;
        manifest.outputs = files;
        std::sort(manifest.outputs.begin(), manifest.outputs.end());
        write_manifest((dir / "manifest.json").string(), manifest,
                       canonical_config_text(sc));
    }
};

std::string trace_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "trace_%04d.csv", index);
    return buf;
}

std::string timing_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "timing_%04d.csv", index);
    return buf;
}

void write_timing_csv(const std::string &path, const SlotTiming &timing) {
    std::vector<std::string> rows;
    for (std::size_t bit = 0; bit < timing.slots.size(); ++bit)
        rows.push_back(std::to_string(bit) + "," + std::to_string(timing.slots[bit].first) +
                       "," + std::to_string(timing.slots[bit].end));
    write_csv(path, "bit,first_sample,end_sample", rows);
}

SlotTiming read_timing_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read timing file '" + path + "'");
    SlotTiming timing;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (header) {
            header = false;
            continue;
        }
        SlotTiming::Slot slot;
        std::size_t p1 = line.find(','), p2 = line.find(',', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw std::runtime_error("malformed timing row in '" + path + "'");
        slot.first = std::stoll(line.substr(p1 + 1, p2 - p1 - 1));
        slot.end = std::stoll(line.substr(p2 + 1));
        timing.slots.push_back(slot);
    }
    return timing;
}

int run_simulate(const std::string &config_path, const std::string &out,
                 int trace_override) {
    Scenario sc = calibrated(parse_scenario_file(config_path));
    OutputSet outputs(out);
    const int n_traces = trace_override > 0 ? trace_override : sc.experiment.traces;
    const RsaKey key = sc.make_key(Rng::derive(sc.experiment.seed, kSeedKey, 0));
    const std::int64_t W = sc.ticks_per_window();
    for (int i = 0; i < n_traces; ++i) {
        const SimResult run = simulate_trace(
            sc, key, Rng::derive(sc.experiment.seed, kSeedTrace, static_cast<std::uint64_t>(i)));
        write_trace_csv(outputs.path(trace_name(i)), run.trace, W);
        write_timing_csv(outputs.path(timing_name(i)), slot_timing(run.schedule, W));
        if (sc.mode == DefenseMode::Shield) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "controller_%04d.csv", i);
            write_controller_log_csv(outputs.path(buf), run.events);
        }
    }
    outputs.finish(sc, key.d_hex());
    std::cout << "simulated " << n_traces << " traces into " << out << "\n";
    return 0;
}

int run_attack(const std::string &config_path, const std::string &traces_dir,
               const std::string &out) {
    Scenario sc = calibrated(parse_scenario_file(config_path));
    OutputSet outputs(out);
    const RsaKey key = sc.make_key(Rng::derive(sc.experiment.seed, kSeedKey, 0));

    AttackResult result;
    if (traces_dir.empty()) {
        result = attack_until_success(sc, key, sc.experiment.seed, sc.experiment.n_max);
    } else {
        // Offline: replay exported traces with their exported slot timing.
        std::vector<std::string> names;
        for (const auto &entry : fs::directory_iterator(traces_dir)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind("trace_", 0) == 0 && name.ends_with(".csv"))
                names.push_back(name);
        }
        std::sort(names.begin(), names.end());
        if (names.empty())
            throw std::runtime_error("no trace files in '" + traces_dir + "'");
        std::vector<double> slot_sums;
        int used = 0;
        for (const std::string &name : names) {
            const Trace trace = read_trace_csv((fs::path(traces_dir) / name).string());
            const std::string timing_file =
                "timing_" + name.substr(6); // trace_NNNN.csv -> timing_NNNN.csv
            const SlotTiming timing =
                read_timing_csv((fs::path(traces_dir) / timing_file).string());
            const std::vector<double> values(trace.samples.begin(), trace.samples.end());
            const std::vector<double> means = slot_means(values, timing);
            if (slot_sums.empty())
                slot_sums.assign(means.size(), 0.0);
            for (std::size_t i = 0; i < means.size(); ++i)
                slot_sums[i] += means[i];
            ++used;
            std::vector<double> avg(slot_sums.size());
            for (std::size_t i = 0; i < slot_sums.size(); ++i)
                avg[i] = slot_sums[i] / used;
            const ThresholdResult threshold = adaptive_threshold(avg);
            KeyGuess guess;
            guess.degenerate = threshold.degenerate;
            guess.bits.resize(avg.size());
            guess.margins.resize(avg.size());
            for (std::size_t i = 0; i < avg.size(); ++i) {
                guess.bits[i] =
                    (!threshold.degenerate && avg[i] < threshold.theta) ? 1 : 0;
                guess.margins[i] = std::abs(avg[i] - threshold.theta);
            }
            result.traces_used = used;
            result.guess = guess;
            result.bit_errors = hamming_distance(guess.bits, key.d_bits);
            if (result.bit_errors <= sc.bit_error_tolerance) {
                result.success = true;
                break;
            }
        }
        result.saturated = !result.success;
    }

    RsaKey guessed;
    guessed.d_bits = result.guess.bits;
    guessed.modulus = BigUint{1}.shifted_left(sc.key_bits + 1);
    std::vector<std::string> rows{std::to_string(result.traces_used) + "," +
                                  std::to_string(result.bit_errors) + "," +
                                  (result.success ? "true" : "false") + "," +
                                  guessed.d_hex()};
    write_csv(outputs.path("attack_result.csv"), "traces_used,bit_errors,success,guess_hex",
              rows);
    outputs.finish(sc, key.d_hex());
    std::cout << "attack: traces_used=" << result.traces_used
              << " bit_errors=" << result.bit_errors
              << " success=" << (result.success ? "true" : "false") << "\n";
    return 0;
}

int run_dse(const std::string &config_path, const std::string &out) {
    Scenario sc = parse_scenario_file(config_path);
    OutputSet outputs(out);
    const DseResult result = explore(sc);
    std::vector<std::string> rows;
    for (const RankedCandidate &rc : result.ranked) {
        rows.push_back(rc.candidate.placement + "," + fmt_double(rc.candidate.f_ref) + "," +
                       std::to_string(rc.candidate.ro_count) + "," +
                       fmt_double(rc.metrics.avg_bit_errors) + "," +
                       fmt_double(rc.metrics.traces_to_extract) + "," +
                       std::to_string(rc.metrics.ff_count) + "," +
                       fmt_double(rc.metrics.avg_power) + "," + fmt_double(rc.cost) + "," +
                       std::to_string(rc.rank));
    }
    write_csv(outputs.path("dse_report.csv"),
              "placement,f_ref_hz,ro_count,avg_bit_errors,traces_to_extract,ff_count,"
              "avg_power_w,cost,rank",
              rows);
    outputs.finish(sc, "");
    const RankedCandidate &winner = result.ranked.front();
    std::cout << "dse winner: " << winner.candidate.name() << " cost=" << winner.cost
              << "\n";
    return 0;
}

int run_evaluate(const std::string &config_path, const std::string &metric,
                 const std::string &out) {
    Scenario sc = parse_scenario_file(config_path);
    OutputSet outputs(out);

    if (metric == "effort") {
        std::vector<std::string> rows, detail;
        for (const char *variant : {"none", "random", "shield"}) {
            Scenario variant_sc = calibrated(sc.with_mode(
                variant == std::string("none")
                    ? DefenseMode::None
                    : (variant == std::string("random") ? DefenseMode::Random
                                                        : DefenseMode::Shield)));
            const EffortResult effort =
                attack_effort(variant_sc, sc.experiment.trials, sc.experiment.n_max);
            rows.push_back(std::string(variant) + "," + fmt_double(effort.mean_traces));
            for (std::size_t t = 0; t < effort.per_trial.size(); ++t)
                detail.push_back(std::string(variant) + "," + std::to_string(t) + "," +
                                 std::to_string(effort.per_trial[t]));
        }
        write_csv(outputs.path("effort.csv"), "variant,mean_traces", rows);
        write_csv(outputs.path("effort_trials.csv"), "variant,trial,traces", detail);
    } else if (metric == "tvla") {
        Scenario run_sc = calibrated(sc);
        const TvlaReport report = tvla_traces_to_leak(run_sc, sc.experiment.n_max);
        std::vector<std::string> curve;
        for (std::size_t i = 0; i < report.t_max_per_pair.size(); ++i)
            curve.push_back(std::to_string(i + 1) + "," +
                            fmt_double(report.t_max_per_pair[i]));
        write_csv(outputs.path("tvla_curve.csv"), "pairs,t_max", curve);
        write_csv(outputs.path("tvla_summary.csv"),
                  "variant,crossed,traces_to_cross,threshold",
                  {std::string(mode_name(run_sc.mode)) + "," +
                   (report.crossed ? "true" : "false") + "," +
                   std::to_string(report.traces_to_cross) + "," +
                   fmt_double(report.threshold)});
    } else if (metric == "corr") {
        Scenario run_sc = calibrated(sc);
        const RsaKey key = run_sc.make_key(Rng::derive(run_sc.experiment.seed, kSeedKey, 0));
        std::vector<std::vector<double>> traces;
        for (int i = 0; i < run_sc.experiment.traces; ++i) {
            const SimResult run = simulate_trace(
                run_sc, key,
                Rng::derive(run_sc.experiment.seed, kSeedTrace, static_cast<std::uint64_t>(i)));
            traces.emplace_back(run.trace.samples.begin(), run.trace.samples.end());
        }
        const CorrelationReport report = consecutive_correlation(traces);
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < report.coefficients.size(); ++i)
            rows.push_back(std::to_string(i) + "," + fmt_double(report.coefficients[i]));
        write_csv(outputs.path("correlation.csv"), "pair_index,coefficient", rows);
        write_csv(outputs.path("correlation_summary.csv"),
                  "variant,mean_coefficient,undefined_pairs",
                  {std::string(mode_name(run_sc.mode)) + "," +
                   fmt_double(report.mean_defined) + "," +
                   std::to_string(report.undefined_pairs)});
    } else if (metric == "overhead") {
        const OverheadReport report = overhead_report(sc);
        std::vector<std::string> rows;
        for (const VariantOverhead &v : report.variants)
            rows.push_back(v.variant + "," + std::to_string(v.ff_count) + "," +
                           fmt_double(v.power_w));
        write_csv(outputs.path("overhead.csv"), "variant,ff,power_w", rows);
        write_csv(outputs.path("overhead_ratios.csv"),
                  "ff_shield_vs_random,power_shield_vs_random,ff_shield_vs_none,"
                  "power_shield_vs_none",
                  {fmt_double(report.ff_shield_vs_random) + "," +
                   fmt_double(report.power_shield_vs_random) + "," +
                   fmt_double(report.ff_shield_vs_none) + "," +
                   fmt_double(report.power_shield_vs_none)});
    } else if (metric == "success") {
        Scenario run_sc = calibrated(sc);
        std::vector<std::string> rows;
        for (int order = 1; order <= 5; ++order) {
            const double rate =
                success_rate(run_sc, order, sc.experiment.trials, sc.experiment.traces);
            rows.push_back(std::to_string(order) + "," + fmt_double(rate));
        }
        write_csv(outputs.path("success.csv"), "order_n,success_rate", rows);
    } else if (metric == "reaction") {
        Scenario run_sc = calibrated(sc.with_mode(DefenseMode::Shield));
        const RsaKey key = run_sc.make_key(Rng::derive(run_sc.experiment.seed, kSeedKey, 0));
        const SimResult run = simulate_trace(
            run_sc, key, Rng::derive(run_sc.experiment.seed, kSeedTrace, 0));
        const ReactionStats stats = measure_reaction_time(run.events);
        write_controller_log_csv(outputs.path("controller_log.csv"), run.events);
        write_csv(outputs.path("reaction.csv"), "f_ref_hz,events,mean_reaction_samples",
                  {fmt_double(run_sc.monitor.f_ref) + "," +
                   std::to_string(stats.delays.size()) + "," +
                   (stats.has_data ? fmt_double(stats.mean_samples) : "no_data")});
    } else {
        throw ConfigError("unknown metric '" + metric + "'");
    }
    outputs.finish(sc, "");
    std::cout << "evaluate " << metric << ": outputs in " << out << "\n";
    return 0;
}

int run_calibrate(const std::string &config_path, const std::string &out) {
    Scenario sc = parse_scenario_file(config_path);
    const Calibration cal = calibrate(sc);
    Scenario resolved = sc;
    resolved.theta0 = cal.theta0;
    resolved.delta = cal.delta;
    resolved.theta_set = true;
    const std::string text = canonical_config_text(resolved);
    resolved.config_hash = hash_hex(fnv1a64(text));
    resolved.scenario_id =
        std::string(mode_name(resolved.mode)) + "-" + resolved.config_hash.substr(0, 8);
    if (!out.empty()) {
        std::ofstream file(out, std::ios::binary);
        if (!file)
            throw std::runtime_error("cannot write '" + out + "'");
        file << text;
    }
    std::cout << "theta0 = " << fmt_double(cal.theta0) << "\n";
    std::cout << "delta = " << fmt_double(cal.delta) << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Power side-channel attack/defense simulator for shared-PDN fabrics"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", traces_dir, metric = "effort";
    int trace_override = 0;

    auto *simulate = app.add_subcommand("simulate", "Produce monitor traces");
    simulate->add_option("--config", config_path, "Scenario config file")->required();
    simulate->add_option("--out", out_dir, "Output directory");
    simulate->add_option("--traces", trace_override, "Override [experiment].traces");

    auto *attack = app.add_subcommand("attack", "Extract the key from traces");
    attack->add_option("--config", config_path, "Scenario config file")->required();
    attack->add_option("--traces", traces_dir, "Directory of exported traces (offline)");
    attack->add_option("--out", out_dir, "Output directory");

    auto *dse = app.add_subcommand("dse", "Monitor design-space exploration");
    dse->add_option("--config", config_path, "Scenario config file")->required();
    dse->add_option("--out", out_dir, "Output directory");

    auto *evaluate = app.add_subcommand("evaluate", "Quantitative evaluation");
    evaluate->add_option("--config", config_path, "Scenario config file")->required();
    evaluate
        ->add_option("--metric", metric,
                     "One of: effort, tvla, corr, overhead, success, reaction")
        ->required();
    evaluate->add_option("--out", out_dir, "Output directory");

    auto *calibrate_cmd = app.add_subcommand("calibrate", "Offline threshold calibration");
    calibrate_cmd->add_option("--config", config_path, "Scenario config file")->required();
    calibrate_cmd->add_option("--out", out_dir, "Calibrated config file path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return run_simulate(config_path, out_dir, trace_override);
        if (attack->parsed())
            return run_attack(config_path, traces_dir, out_dir);
        if (dse->parsed())
            return run_dse(config_path, out_dir);
        if (evaluate->parsed())
            return run_evaluate(config_path, metric, out_dir);
        if (calibrate_cmd->parsed())
            return run_calibrate(config_path, out_dir == "out" ? "" : out_dir);
    } catch (const ConfigError &e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: runtime: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
