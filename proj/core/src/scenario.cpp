#include "shieldsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace shieldsim {

namespace {

std::string trim(const std::string &s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

// Raw key/value table from INI-style text. '#' and ';' start comments.
using Table = std::map<std::string, std::map<std::string, std::string>>;

Table read_table(const std::string &text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            table[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (table[section].count(key))
            throw ConfigError("duplicate key " + section + "." + key);
        table[section][key] = value;
    }
    return table;
}

class Reader {
  public:
    explicit Reader(Table table) : table_(std::move(table)) {}

    bool has(const std::string &sec, const std::string &key) const {
        auto s = table_.find(sec);
        return s != table_.end() && s->second.count(key) > 0;
    }

    std::string str(const std::string &sec, const std::string &key,
                    const std::string &fallback) {
        mark(sec, key);
        if (!has(sec, key))
            return fallback;
        return table_.at(sec).at(key);
    }

    double num(const std::string &sec, const std::string &key, double fallback) {
        mark(sec, key);
        if (!has(sec, key))
            return fallback;
        return to_num(sec, key, table_.at(sec).at(key));
    }

    std::int64_t integer(const std::string &sec, const std::string &key,
                         std::int64_t fallback) {
        mark(sec, key);
        if (!has(sec, key))
            return fallback;
        const double v = to_num(sec, key, table_.at(sec).at(key));
        const std::int64_t i = static_cast<std::int64_t>(std::llround(v));
        if (static_cast<double>(i) != v)
            throw ConfigError(sec + "." + key + ": expected an integer");
        return i;
    }

    bool boolean(const std::string &sec, const std::string &key, bool fallback) {
        mark(sec, key);
        if (!has(sec, key))
            return fallback;
        const std::string v = table_.at(sec).at(key);
        if (v == "true" || v == "1")
            return true;
        if (v == "false" || v == "0")
            return false;
        throw ConfigError(sec + "." + key + ": expected true or false");
    }

    GridLoc loc(const std::string &sec, const std::string &key, GridLoc fallback) {
        mark(sec, key);
        if (!has(sec, key))
            return fallback;
        const auto parts = split(table_.at(sec).at(key), ',');
        if (parts.size() != 2)
            throw ConfigError(sec + "." + key + ": expected x,y");
        return GridLoc{static_cast<int>(to_num(sec, key, parts[0])),
                       static_cast<int>(to_num(sec, key, parts[1]))};
    }

    std::vector<std::string> str_list(const std::string &sec, const std::string &key,
                                      std::vector<std::string> fallback) {
        mark(sec, key);
        if (!has(sec, key))
            return fallback;
        return split(table_.at(sec).at(key), ',');
    }

    std::vector<double> num_list(const std::string &sec, const std::string &key,
                                 std::vector<double> fallback) {
        mark(sec, key);
        if (!has(sec, key))
            return fallback;
        std::vector<double> out;
        for (const auto &p : split(table_.at(sec).at(key), ','))
            out.push_back(to_num(sec, key, p));
        return out;
    }

    // ro_locations uses "x:y;x:y;..." to keep the comma for lists.
    std::vector<GridLoc> loc_list(const std::string &sec, const std::string &key) {
        mark(sec, key);
        std::vector<GridLoc> out;
        if (!has(sec, key))
            return out;
        for (const auto &pair : split(table_.at(sec).at(key), ';')) {
            const auto xy = split(pair, ':');
            if (xy.size() != 2)
                throw ConfigError(sec + "." + key + ": expected x:y;x:y;...");
            out.push_back(GridLoc{static_cast<int>(to_num(sec, key, xy[0])),
                                  static_cast<int>(to_num(sec, key, xy[1]))});
        }
        return out;
    }

    // Rejects anything present in the table that no reader consumed.
    void reject_unknown() const {
        for (const auto &[sec, keys] : table_) {
            if (!known_.count(sec))
                throw ConfigError("unknown config section [" + sec + "]");
            for (const auto &[key, value] : keys) {
                (void)value;
                if (!known_.at(sec).count(key))
                    throw ConfigError("unknown config key " + sec + "." + key);
            }
        }
    }

  private:
    double to_num(const std::string &sec, const std::string &key, const std::string &v) {
        try {
            std::size_t used = 0;
            const double out = std::stod(v, &used);
            if (used != v.size())
                throw std::invalid_argument("trailing characters");
            return out;
        } catch (const std::exception &) {
            throw ConfigError(sec + "." + key + ": expected a number, got '" + v + "'");
        }
    }

    void mark(const std::string &sec, const std::string &key) { known_[sec].insert(key); }

    Table table_;
    std::map<std::string, std::set<std::string>> known_;
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

const char *mode_name(DefenseMode m) {
    switch (m) {
    case DefenseMode::Random:
        return "random";
    case DefenseMode::Shield:
        return "shield";
    default:
        return "none";
    }
}

std::int64_t Scenario::ticks_per_window() const {
    const double exact = static_cast<double>(monitor.c_ref) * f_app / monitor.f_ref;
    const std::int64_t w = static_cast<std::int64_t>(std::llround(exact));
    if (w < 1 || std::abs(exact - static_cast<double>(w)) > 1e-9)
        throw ConfigError("monitor.c_ref: c_ref*f_app/f_ref must be a positive integer "
                          "number of ticks");
    return w;
}

std::int64_t Scenario::max_schedule_ticks() const {
    return static_cast<std::int64_t>(key_bits) * (victim.t_square + victim.t_mult);
}

std::int64_t Scenario::horizon_windows() const {
    const std::int64_t w = ticks_per_window();
    const std::int64_t head = static_cast<std::int64_t>(start_jitter_windows) * w;
    const std::int64_t body = head + max_schedule_ticks();
    return (body + w - 1) / w + experiment.trailing_idle_windows;
}

RsaKey Scenario::make_key(std::uint64_t key_seed) const {
    // Modulus is immaterial for the power model; a power of two wide enough
    // for the exponent keeps functional use possible.
    const BigUint modulus = BigUint{1}.shifted_left(key_bits + 1);
    if (!key_hex.empty())
        return RsaKey::from_exponent_hex(key_hex, key_bits, modulus);
    Rng rng(key_seed);
    return RsaKey::random_key(key_bits, modulus, rng);
}

Scenario Scenario::with_mode(DefenseMode m) const {
    Scenario copy = *this;
    copy.mode = m;
    if (!copy.jitter_explicit) {
        switch (m) {
        case DefenseMode::None:
            copy.start_jitter_windows = 0;
            break;
        case DefenseMode::Random:
            copy.start_jitter_windows = 8;
            break;
        case DefenseMode::Shield:
            copy.start_jitter_windows = 16;
            break;
        }
    }
    const std::string text = canonical_config_text(copy);
    copy.config_hash = hash_hex(fnv1a64(text));
    copy.scenario_id = std::string(mode_name(copy.mode)) + "-" + copy.config_hash.substr(0, 8);
    return copy;
}

std::vector<GridLoc> resolve_placement(const std::string &name, int m,
                                       const GridLoc &victim, const Floorplan &plan) {
    log2_exact(m);
    std::vector<GridLoc> cells;
    if (name == "close2") {
        // Diamond rings at Manhattan radius 12, 16 and 20: spread around the victim
        // yet close to it. Cells are emitted in blocks of four with the
        // distance pattern {12,16,20,16}, so every prefix that is a multiple
        // of four sees the same distance mix; monitors of different sizes
        // then share the same mean attenuation.
        auto ring_cell = [&](int radius, int idx, int per_ring) {
            const int per_quadrant = per_ring / 4;
            const int quadrant = idx / per_quadrant;
            const int stride = std::max(1, radius / per_quadrant);
            const int along = (idx % per_quadrant) * stride;
            int dx = 0, dy = 0;
            switch (quadrant) {
            case 0:
                dx = radius - along;
                dy = along;
                break;
            case 1:
                dx = -along;
                dy = radius - along;
                break;
            case 2:
                dx = -(radius - along);
                dy = -along;
                break;
            default:
                dx = along;
                dy = -(radius - along);
                break;
            }
            return GridLoc{victim.x + dx, victim.y + dy};
        };
        for (int block = 0; block < 16; ++block) {
            cells.push_back(ring_cell(12, block, 16));
            cells.push_back(ring_cell(16, 2 * block, 32));
            cells.push_back(ring_cell(20, block, 16));
            cells.push_back(ring_cell(16, 2 * block + 1, 32));
        }
    } else if (name == "close1") {
        // Compact 8x8 block, every RO next to its neighbors.
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                cells.push_back(GridLoc{victim.x + 13 + x, victim.y + 13 + y});
    } else if (name == "far") {
        // Same block pushed to the opposite fabric corner, far from the
        // victim partition.
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                cells.push_back(GridLoc{4 + x, 4 + y});
    } else {
        throw ConfigError("monitor.placement: unknown placement '" + name + "'");
    }
    if (m > static_cast<int>(cells.size()))
        throw ConfigError("monitor.m: placement '" + name + "' supports at most " +
                          std::to_string(cells.size()) + " ROs");
    std::vector<GridLoc> out(cells.begin(), cells.begin() + m);
    for (const GridLoc &loc : out)
        if (!plan.contains(loc))
            throw ConfigError("monitor.placement: RO cell off the floorplan");
    return out;
}

Scenario parse_scenario(const std::string &text) {
    Reader r(read_table(text));
    Scenario sc;

    const int width = static_cast<int>(r.integer("floorplan", "width", 48));
    const int height = static_cast<int>(r.integer("floorplan", "height", 48));
    sc.plan = Floorplan(width, height);
    sc.victim_loc = r.loc("floorplan", "victim", GridLoc{24, 24});
    sc.noise_loc = r.loc("floorplan", "noise", GridLoc{26, 24});
    try {
        sc.plan.add_location("victim", sc.victim_loc);
        sc.plan.add_location("noise", sc.noise_loc);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("floorplan: ") + e.what());
    }

    sc.pdn.v_nom = r.num("pdn", "v_nom_v", 1.0);
    sc.pdn.r_eff = r.num("pdn", "r_eff_ohm", 0.1);
    sc.pdn.l_eff = r.num("pdn", "l_eff_h", 1e-8);
    sc.pdn.lambda = r.num("pdn", "lambda", 0.5);
    sc.f_app = r.num("pdn", "f_app_hz", 10e6);
    if (sc.f_app <= 0.0)
        throw ConfigError("pdn.f_app_hz must be > 0");
    sc.pdn.tick_period = 1.0 / sc.f_app;

    sc.key_bits = static_cast<int>(r.integer("victim", "key_bits", 1024));
    if (sc.key_bits < 1)
        throw ConfigError("victim.key_bits must be >= 1");
    sc.key_hex = r.str("victim", "key_hex", "");
    sc.victim.p_idle = r.num("victim", "p_idle_w", 0.70);
    sc.victim.p_square = r.num("victim", "p_square_w", 0.912);
    sc.victim.p_mult = r.num("victim", "p_mult_w", 1.70);
    sc.victim.t_square = r.integer("victim", "t_square_ticks", 50);
    sc.victim.t_mult = r.integer("victim", "t_mult_ticks", 50);
    sc.victim.location = sc.victim_loc;
    sc.start_jitter_windows =
        static_cast<int>(r.integer("victim", "start_jitter_windows", -1));
    if (sc.start_jitter_windows < -1)
        throw ConfigError("victim.start_jitter_windows must be >= 0");

    sc.placement = r.str("monitor", "placement", "close2");
    sc.monitor.m = static_cast<int>(r.integer("monitor", "m", 32));
    sc.monitor.f_ref = r.num("monitor", "f_ref_hz", 10e6);
    sc.monitor.c_ref = r.integer("monitor", "c_ref", 10);
    sc.monitor.sensor.k = r.num("monitor", "k_hz_per_v", 200e6);
    sc.monitor.sensor.f0 = r.num("monitor", "f0_hz", 100e6);
    sc.monitor.sensor.n_ff = static_cast<int>(r.integer("monitor", "n_ff", 16));
    sc.monitor.self_power_per_ro = r.num("monitor", "self_power_per_ro_w", 0.0);
    std::vector<GridLoc> explicit_ros = r.loc_list("monitor", "ro_locations");

    const std::string mode = r.str("defense", "mode", "none");
    if (mode == "none")
        sc.mode = DefenseMode::None;
    else if (mode == "random")
        sc.mode = DefenseMode::Random;
    else if (mode == "shield")
        sc.mode = DefenseMode::Shield;
    else
        throw ConfigError("defense.mode: expected none, random or shield");

    // The start jitter is part of the deployed protection (trigger hiding);
    // an unprotected victim runs strictly periodic. Explicit values win.
    sc.jitter_explicit = sc.start_jitter_windows >= 0;
    if (!sc.jitter_explicit) {
        switch (sc.mode) {
        case DefenseMode::None:
            sc.start_jitter_windows = 0;
            break;
        case DefenseMode::Random:
            sc.start_jitter_windows = 8;
            break;
        case DefenseMode::Shield:
            sc.start_jitter_windows = 16;
            break;
        }
    }

    sc.bank.sets = static_cast<int>(r.integer("defense", "sets", 4));
    const double p_set_default =
        sc.bank.sets > 0 ? sc.victim.p_mult / sc.bank.sets : 0.0;
    sc.bank.p_set = r.num("defense", "p_set_w", p_set_default);
    sc.bank.ro_per_set = static_cast<int>(r.integer("defense", "ro_per_set", 16));
    sc.bank.location = sc.noise_loc;
    sc.bank.budget = sc.victim.p_mult;
    sc.actuation_ticks = r.integer("defense", "actuation_ticks", 2);
    if (sc.actuation_ticks < 0)
        throw ConfigError("defense.actuation_ticks must be >= 0");
    sc.auto_calibrate = r.boolean("defense", "auto_calibrate", true);
    const std::string theta_raw = r.str("defense", "theta0", "auto");
    const std::string delta_raw = r.str("defense", "delta", "auto");
    if ((theta_raw == "auto") != (delta_raw == "auto"))
        throw ConfigError("defense.theta0 and defense.delta must be set together");
    if (theta_raw != "auto") {
        try {
            sc.theta0 = std::stod(theta_raw);
            sc.delta = std::stod(delta_raw);
        } catch (const std::exception &) {
            throw ConfigError("defense.theta0/delta: expected numbers or 'auto'");
        }
        sc.theta_set = true;
    }
    sc.random_cfg.n_ros = static_cast<int>(r.integer("defense", "n_ros", 96));
    sc.random_cfg.p_per_ro = r.num("defense", "p_per_ro_w", 0.121);
    sc.random_cfg.duty = r.num("defense", "duty", 0.5);

    sc.bit_error_tolerance =
        static_cast<int>(r.integer("attacker", "bit_error_tolerance", 0));
    if (sc.bit_error_tolerance < 0)
        throw ConfigError("attacker.bit_error_tolerance must be >= 0");

    if (!r.has("experiment", "seed"))
        throw ConfigError("experiment.seed is mandatory");
    sc.experiment.seed = static_cast<std::uint64_t>(r.integer("experiment", "seed", 0));
    sc.experiment.trials = static_cast<int>(r.integer("experiment", "trials", 20));
    sc.experiment.n_max = static_cast<int>(r.integer("experiment", "n_max", 2000));
    sc.experiment.traces = static_cast<int>(r.integer("experiment", "traces", 100));
    sc.experiment.trailing_idle_windows =
        static_cast<int>(r.integer("experiment", "trailing_idle_windows", 40));
    if (sc.experiment.trials < 1 || sc.experiment.n_max < 1 || sc.experiment.traces < 1 ||
        sc.experiment.trailing_idle_windows < 0)
        throw ConfigError("experiment: trials, n_max and traces must be >= 1, "
                          "trailing_idle_windows >= 0");

    sc.dse.placements = r.str_list("dse", "placements", sc.dse.placements);
    sc.dse.f_refs = r.num_list("dse", "f_ref_hz", sc.dse.f_refs);
    std::vector<double> counts;
    for (int c : sc.dse.ro_counts)
        counts.push_back(c);
    counts = r.num_list("dse", "ro_counts", counts);
    sc.dse.ro_counts.clear();
    for (double c : counts)
        sc.dse.ro_counts.push_back(static_cast<int>(c));
    sc.dse.w_accuracy = r.num("dse", "w_accuracy", sc.dse.w_accuracy);
    sc.dse.w_area = r.num("dse", "w_area", sc.dse.w_area);
    sc.dse.w_power = r.num("dse", "w_power", sc.dse.w_power);
    sc.dse.trials = static_cast<int>(r.integer("dse", "trials", sc.dse.trials));
    const std::string sweep = r.str("dse", "sweep", "exhaustive");
    if (sweep == "exhaustive")
        sc.dse.exhaustive = true;
    else if (sweep == "coordinate")
        sc.dse.exhaustive = false;
    else
        throw ConfigError("dse.sweep: expected exhaustive or coordinate");
    sc.dse.effort_trials =
        static_cast<int>(r.integer("dse", "effort_trials", sc.dse.effort_trials));
    sc.dse.effort_n_max =
        static_cast<int>(r.integer("dse", "effort_n_max", sc.dse.effort_n_max));
    if (sc.dse.placements.empty() || sc.dse.f_refs.empty() || sc.dse.ro_counts.empty())
        throw ConfigError("dse: placements, f_ref_hz and ro_counts must be non-empty");
    if (sc.dse.w_accuracy < 0 || sc.dse.w_area < 0 || sc.dse.w_power < 0 ||
        (sc.dse.w_accuracy == 0 && sc.dse.w_area == 0 && sc.dse.w_power == 0))
        throw ConfigError("dse: weights must be >= 0 and not all zero");
    if (sc.dse.trials < 1 || sc.dse.effort_trials < 1 || sc.dse.effort_n_max < 1)
        throw ConfigError("dse: trials must be >= 1");

    sc.overhead.c_ref_width_ff =
        static_cast<int>(r.integer("overhead", "c_ref_width_ff", 16));
    sc.overhead.ctl_ffs = static_cast<int>(r.integer("overhead", "ctl_ffs", 20));
    sc.overhead.set_enable_ffs_per_set =
        static_cast<int>(r.integer("overhead", "set_enable_ffs_per_set", 1));
    sc.overhead.ffs_per_noise_ro =
        static_cast<int>(r.integer("overhead", "ffs_per_noise_ro", 8));
    sc.overhead.lfsr_width_ff =
        static_cast<int>(r.integer("overhead", "lfsr_width_ff", 16));

    r.reject_unknown();

    // Resolve and validate the derived pieces.
    try {
        sc.pdn.validate();
        sc.victim.validate();
        if (!explicit_ros.empty()) {
            sc.placement = "custom";
            sc.monitor.ro_locations = explicit_ros;
        } else {
            sc.monitor.ro_locations =
                resolve_placement(sc.placement, sc.monitor.m, sc.victim_loc, sc.plan);
        }
        sc.monitor.validate();
        for (const GridLoc &loc : sc.monitor.ro_locations)
            if (!sc.plan.contains(loc))
                throw ConfigError("monitor.ro_locations: RO off the floorplan");
        sc.bank.validate();
        sc.random_cfg.validate();
        if (!sc.key_hex.empty())
            sc.make_key(0); // validates width
        sc.ticks_per_window();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }

    if (sc.mode == DefenseMode::Shield && !sc.theta_set && !sc.auto_calibrate)
        throw ConfigError("defense.theta0 is required for mode=shield unless "
                          "defense.auto_calibrate is enabled");

    const std::string canon = canonical_config_text(sc);
    sc.config_hash = hash_hex(fnv1a64(canon));
    sc.scenario_id = std::string(mode_name(sc.mode)) + "-" + sc.config_hash.substr(0, 8);
    return sc;
}

Scenario parse_scenario_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string canonical_config_text(const Scenario &sc) {
    std::ostringstream out;
    out << "[floorplan]\n";
    out << "width = " << sc.plan.width() << "\n";
    out << "height = " << sc.plan.height() << "\n";
    out << "victim = " << sc.victim_loc.x << "," << sc.victim_loc.y << "\n";
    out << "noise = " << sc.noise_loc.x << "," << sc.noise_loc.y << "\n";
    out << "\n[pdn]\n";
    out << "v_nom_v = " << format_double(sc.pdn.v_nom) << "\n";
    out << "r_eff_ohm = " << format_double(sc.pdn.r_eff) << "\n";
    out << "l_eff_h = " << format_double(sc.pdn.l_eff) << "\n";
    out << "lambda = " << format_double(sc.pdn.lambda) << "\n";
    out << "f_app_hz = " << format_double(sc.f_app) << "\n";
    out << "\n[victim]\n";
    out << "key_bits = " << sc.key_bits << "\n";
    if (!sc.key_hex.empty())
        out << "key_hex = " << sc.key_hex << "\n";
    out << "p_idle_w = " << format_double(sc.victim.p_idle) << "\n";
    out << "p_square_w = " << format_double(sc.victim.p_square) << "\n";
    out << "p_mult_w = " << format_double(sc.victim.p_mult) << "\n";
    out << "t_square_ticks = " << sc.victim.t_square << "\n";
    out << "t_mult_ticks = " << sc.victim.t_mult << "\n";
    out << "start_jitter_windows = " << sc.start_jitter_windows << "\n";
    out << "\n[monitor]\n";
    if (sc.placement == "custom") {
        out << "ro_locations = ";
        for (std::size_t i = 0; i < sc.monitor.ro_locations.size(); ++i) {
            if (i)
                out << ";";
            out << sc.monitor.ro_locations[i].x << ":" << sc.monitor.ro_locations[i].y;
        }
        out << "\n";
    } else {
        out << "placement = " << sc.placement << "\n";
    }
    out << "m = " << sc.monitor.m << "\n";
    out << "f_ref_hz = " << format_double(sc.monitor.f_ref) << "\n";
    out << "c_ref = " << sc.monitor.c_ref << "\n";
    out << "k_hz_per_v = " << format_double(sc.monitor.sensor.k) << "\n";
    out << "f0_hz = " << format_double(sc.monitor.sensor.f0) << "\n";
    out << "n_ff = " << sc.monitor.sensor.n_ff << "\n";
    out << "self_power_per_ro_w = " << format_double(sc.monitor.self_power_per_ro) << "\n";
    out << "\n[defense]\n";
    out << "mode = " << mode_name(sc.mode) << "\n";
    out << "sets = " << sc.bank.sets << "\n";
    out << "p_set_w = " << format_double(sc.bank.p_set) << "\n";
    out << "ro_per_set = " << sc.bank.ro_per_set << "\n";
    out << "actuation_ticks = " << sc.actuation_ticks << "\n";
    out << "auto_calibrate = " << (sc.auto_calibrate ? "true" : "false") << "\n";
    if (sc.theta_set) {
        out << "theta0 = " << format_double(sc.theta0) << "\n";
        out << "delta = " << format_double(sc.delta) << "\n";
    } else {
        out << "theta0 = auto\n";
        out << "delta = auto\n";
    }
    out << "n_ros = " << sc.random_cfg.n_ros << "\n";
    out << "p_per_ro_w = " << format_double(sc.random_cfg.p_per_ro) << "\n";
    out << "duty = " << format_double(sc.random_cfg.duty) << "\n";
    out << "\n[attacker]\n";
    out << "bit_error_tolerance = " << sc.bit_error_tolerance << "\n";
    out << "\n[experiment]\n";
    out << "seed = " << sc.experiment.seed << "\n";
    out << "trials = " << sc.experiment.trials << "\n";
    out << "n_max = " << sc.experiment.n_max << "\n";
    out << "traces = " << sc.experiment.traces << "\n";
    out << "trailing_idle_windows = " << sc.experiment.trailing_idle_windows << "\n";
    out << "\n[dse]\n";
    out << "placements = ";
    for (std::size_t i = 0; i < sc.dse.placements.size(); ++i)
        out << (i ? "," : "") << sc.dse.placements[i];
    out << "\nf_ref_hz = ";
    for (std::size_t i = 0; i < sc.dse.f_refs.size(); ++i)
        out << (i ? "," : "") << format_double(sc.dse.f_refs[i]);
    out << "\nro_counts = ";
    for (std::size_t i = 0; i < sc.dse.ro_counts.size(); ++i)
        out << (i ? "," : "") << sc.dse.ro_counts[i];
    out << "\n";
    out << "w_accuracy = " << format_double(sc.dse.w_accuracy) << "\n";
    out << "w_area = " << format_double(sc.dse.w_area) << "\n";
    out << "w_power = " << format_double(sc.dse.w_power) << "\n";
    out << "trials = " << sc.dse.trials << "\n";
    out << "sweep = " << (sc.dse.exhaustive ? "exhaustive" : "coordinate") << "\n";
    out << "effort_trials = " << sc.dse.effort_trials << "\n";
    out << "effort_n_max = " << sc.dse.effort_n_max << "\n";
    out << "\n[overhead]\n";
    out << "c_ref_width_ff = " << sc.overhead.c_ref_width_ff << "\n";
    out << "ctl_ffs = " << sc.overhead.ctl_ffs << "\n";
    out << "set_enable_ffs_per_set = " << sc.overhead.set_enable_ffs_per_set << "\n";
    out << "ffs_per_noise_ro = " << sc.overhead.ffs_per_noise_ro << "\n";
    out << "lfsr_width_ff = " << sc.overhead.lfsr_width_ff << "\n";
    return out.str();
}

std::uint64_t fnv1a64(const std::string &text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hash_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

} // namespace shieldsim
