#include "twoatom/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "twoatom/dynamics.hpp"
#include "twoatom/sweep.hpp"

#ifndef TWOATOM_VERSION
#define TWOATOM_VERSION "0.0.0"
#endif

namespace twoatom::cli {

namespace {

constexpr std::array kAllMeasures{Measure::Concurrence, Measure::Discord, Measure::GeometricDiscord,
                                  Measure::ObservableBound};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string sig7(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + key + ": '" + text + "'");
    }
}

int parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for " + key + ": '" + text + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("invalid boolean for " + key + ": '" + text + "'");
}

std::vector<Measure> measures_or(const RunConfig& cfg, std::vector<Measure> fallback) {
    return cfg.measures.empty() ? fallback : cfg.measures;
}

std::string measures_text(const std::vector<Measure>& ms) {
    std::string s;
    for (Measure m : ms) s += (s.empty() ? "" : ",") + measure_key(m);
    return s;
}

std::string column_name(Measure m) {
    switch (m) {
        case Measure::Concurrence: return "C";
        case Measure::Discord: return "D";
        case Measure::GeometricDiscord: return "G";
        case Measure::ObservableBound: return "G_obs";
    }
    return "?";
}

struct Resolved {
    CollectiveParams params;
    std::vector<double> p_values;
    TimeGrid grid{{0.0}};
    std::vector<Measure> measures;
};

Resolved resolve(const RunConfig& cfg, const std::string& command) {
    cfg.validate();
    Resolved r;
    r.params = CollectiveParams::from_distance(cfg.distance);
    const bool surface_cmd = command == "sweep";
    if (cfg.p_range) {
        if (!surface_cmd) throw ConfigError(command + " takes a single --p, not --p-range");
        r.p_values = cfg.p_range->values();
    } else if (cfg.p) {
        r.p_values = {*cfg.p};
    } else {
        r.p_values = surface_cmd ? PRange{}.values() : std::vector<double>{2.0 / 3.0};
    }
    const int steps = cfg.t_steps.value_or(surface_cmd ? 401 : 1001);
    r.grid = TimeGrid::uniform(cfg.t_max, steps);
    r.measures = measures_or(cfg, surface_cmd ? std::vector<Measure>{Measure::Concurrence}
                                              : std::vector<Measure>(kAllMeasures.begin(), kAllMeasures.end()));
    if (surface_cmd && r.measures.size() != 1)
        throw ConfigError("sweep takes exactly one measure");
    return r;
}

void write_metadata(std::ostream& out, const std::string& command, const RunConfig& cfg,
                    const Resolved& r) {
    out << "# twoatom " << TWOATOM_VERSION << "\n";
    out << "# command: " << command << "\n";
    out << "# config: distance=" << short_num(cfg.distance);
    if (cfg.p_range)
        out << " p_range=" << short_num(cfg.p_range->first) << ":" << short_num(cfg.p_range->last)
            << ":" << cfg.p_range->count;
    else
        out << " p=" << short_num(r.p_values.front());
    out << " tmax=" << short_num(cfg.t_max) << " steps=" << r.grid.size()
        << " measures=" << measures_text(r.measures)
        << " oracle_check=" << (cfg.oracle_check ? "true" : "false") << " format=" << cfg.format
        << "\n";
    out << "# kr=" << short_num(r.params.kr) << " gamma12=" << short_num(r.params.gamma12)
        << " omega12=" << short_num(r.params.omega12) << "\n";
}

}  // namespace

std::vector<double> PRange::values() const {
    if (count == 1) return {first};
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        v[static_cast<std::size_t>(i)] = first + (last - first) * i / (count - 1);
    v.back() = last;
    return v;
}

void RunConfig::validate() const {
    if (!(distance > 0.0) || !std::isfinite(distance)) throw ConfigError("distance must be positive");
    if (p && !(*p >= 0.0 && *p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
    if (p && p_range) throw ConfigError("give either --p or --p-range, not both");
    if (p_range) {
        if (p_range->count < 1) throw ConfigError("p-range needs at least one point");
        if (!(p_range->first >= 0.0 && p_range->last <= 1.0))
            throw ConfigError("p-range must lie in [0, 1]");
        if (p_range->count > 1 && !(p_range->last > p_range->first))
            throw ConfigError("p-range must be increasing");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("tmax must be positive");
    if (t_steps && *t_steps < 2) throw ConfigError("steps must be at least 2");
    if (format != "csv") throw ConfigError("unsupported format '" + format + "'");
}

PRange parse_p_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(trim(item));
    if (parts.size() != 3) throw ConfigError("p-range must look like a:b:n, got '" + text + "'");
    return {parse_double("p-range", parts[0]), parse_double("p-range", parts[1]),
            parse_int("p-range", parts[2])};
}

std::vector<Measure> parse_measures(const std::string& text) {
    static const std::map<std::string, Measure> names{{"c", Measure::Concurrence},
                                                      {"d", Measure::Discord},
                                                      {"g", Measure::GeometricDiscord},
                                                      {"obs", Measure::ObservableBound}};
    std::vector<Measure> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto it = names.find(trim(item));
        if (it == names.end()) throw ConfigError("unknown measure '" + item + "' (use c,d,g,obs)");
        if (std::find(out.begin(), out.end(), it->second) == out.end()) out.push_back(it->second);
    }
    if (out.empty()) throw ConfigError("empty measure list");
    // Canonical column order regardless of how they were listed.
    std::vector<Measure> ordered;
    for (Measure m : kAllMeasures)
        if (std::find(out.begin(), out.end(), m) != out.end()) ordered.push_back(m);
    return ordered;
}

std::string measure_key(Measure m) {
    switch (m) {
        case Measure::Concurrence: return "c";
        case Measure::Discord: return "d";
        case Measure::GeometricDiscord: return "g";
        case Measure::ObservableBound: return "obs";
    }
    return "?";
}

RunConfig parse_config_file(std::istream& in, RunConfig cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "distance")
            cfg.distance = parse_double(key, value);
        else if (key == "p")
            cfg.p = parse_double(key, value);
        else if (key == "p-range" || key == "p_range")
            cfg.p_range = parse_p_range(value);
        else if (key == "tmax")
            cfg.t_max = parse_double(key, value);
        else if (key == "steps")
            cfg.t_steps = parse_int(key, value);
        else if (key == "measures")
            cfg.measures = parse_measures(value);
        else if (key == "oracle-check" || key == "oracle_check")
            cfg.oracle_check = parse_bool(key, value);
        else if (key == "output")
            cfg.output_path = value;
        else if (key == "format")
            cfg.format = value;
        else
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return cfg;
}

int cmd_rates(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.distance > 0.0) || !std::isfinite(cfg.distance))
        throw ConfigError("distance must be positive");
    const double kr = 2.0 * std::numbers::pi * cfg.distance;
    const CollectiveRates r = collective_rates(kr);
    out << "distance/lambda = " << sig7(cfg.distance) << "\n";
    out << "kr = " << sig7(kr) << "\n";
    out << "gamma12/gamma = " << sig7(r.gamma12) << "\n";
    out << "omega12/gamma = " << sig7(r.omega12) << "\n";
    out << "gamma_plus/gamma = " << sig7(1.0 + r.gamma12) << "\n";
    out << "gamma_minus/gamma = " << sig7(1.0 - r.gamma12) << "\n";
    if (r.omega12_diverging) out << "# warning: omega12 diverges as (kr)^-3 at this distance\n";
    return kSuccess;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
    const Resolved r = resolve(cfg, "evolve");
    const Trajectory traj = trajectory(r.p_values.front(), r.params, r.grid);

    write_metadata(out, "evolve", cfg, r);
    out << "t";
    for (Measure m : r.measures) out << "," << column_name(m);
    out << ",rho11,rho22,rho33,rho44,abs_rho14,abs_rho23";
    if (cfg.oracle_check) out << ",oracle_dev";
    out << "\n";

    MeasureOptions mopts;
    mopts.oracle_check = true;
    for (const TrajectoryRow& row : traj.rows) {
        out << num(row.t);
        for (Measure m : r.measures) out << "," << num(row.measures.get(m));
        for (double v : row.state.pop) out << "," << num(v);
        out << "," << num(std::abs(row.state.c14)) << "," << num(std::abs(row.state.c23));
        if (cfg.oracle_check)
            out << "," << num(*measure_all(to_density(row.state), mopts).max_oracle_deviation);
        out << "\n";
    }
    return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const Resolved r = resolve(cfg, "sweep");
    const Surface s = surface(r.measures.front(), r.p_values, r.params, r.grid);
    write_metadata(out, "sweep", cfg, r);
    out << "p,t,value\n";
    for (std::size_t i = 0; i < s.p_values.size(); ++i)
        for (std::size_t n = 0; n < s.grid.size(); ++n)
            out << num(s.p_values[i]) << "," << num(s.grid[n]) << ","
                << num(s.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n))) << "\n";
    return kSuccess;
}

int cmd_events(const RunConfig& cfg, std::ostream& out) {
    const Resolved r = resolve(cfg, "events");
    const Trajectory traj = trajectory(r.p_values.front(), r.params, r.grid);
    const EventReport ev = detect_events(traj);

    std::vector<std::pair<double, std::string>> rows;
    for (double t : ev.death_times) rows.emplace_back(t, "death");
    for (double t : ev.birth_times) rows.emplace_back(t, "birth");
    std::sort(rows.begin(), rows.end());

    write_metadata(out, "events", cfg, r);
    out << "event,t\n";
    for (const auto& [t, kind] : rows) out << kind << "," << num(t) << "\n";
    return kSuccess;
}

int cmd_check(std::ostream& out, const CheckOptions& opts, const CheckHooks& hooks) {
    const CheckReport report = run_oracle_checks(opts, hooks);
    for (const SuiteResult& s : report.suites) {
        out << (s.passed ? "PASS " : "FAIL ") << s.name << " max_dev=" << short_num(s.max_deviation)
            << " tol=" << short_num(s.tolerance);
        if (!s.detail.empty()) out << " (" << s.detail << ")";
        out << "\n";
    }
    const bool ok = report.passed();
    out << (ok ? "all suites passed" : "check FAILED") << "\n";
    return ok ? kSuccess : kCheckFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlation dynamics of two atoms in a common vacuum"};
    app.require_subcommand(1);
    app.set_version_flag("--version", TWOATOM_VERSION);

    struct Flags {
        double distance = 0.0;
        double p = 0.0;
        std::string p_range;
        double tmax = 0.0;
        int steps = 0;
        std::string measures;
        bool oracle = false;
        std::string config;
        std::string output;
    } flags;

    struct Handles {
        CLI::Option *distance = nullptr, *p = nullptr, *p_range = nullptr, *tmax = nullptr,
                    *steps = nullptr, *measures = nullptr, *oracle = nullptr, *config = nullptr,
                    *output = nullptr;
    };
    std::map<CLI::App*, Handles> handles;

    auto add_common = [&](CLI::App* sub, bool run_flags) {
        Handles h;
        h.distance = sub->add_option("--distance", flags.distance, "Interatomic distance in wavelengths");
        h.config = sub->add_option("--config", flags.config, "Key-value config file");
        h.output = sub->add_option("--output", flags.output, "Output file (default stdout)");
        if (run_flags) {
            h.p = sub->add_option("--p", flags.p, "Initial excitation probability");
            h.p_range = sub->add_option("--p-range", flags.p_range, "p grid as a:b:n");
            h.tmax = sub->add_option("--tmax", flags.tmax, "Final time Gamma t");
            h.steps = sub->add_option("--steps", flags.steps, "Number of time points");
            h.measures = sub->add_option("--measures", flags.measures, "Subset of c,d,g,obs");
            h.oracle = sub->add_flag("--oracle-check", flags.oracle, "Cross-check against oracles");
        }
        handles[sub] = h;
    };

    CLI::App* rates = app.add_subcommand("rates", "Collective damping and dipole-dipole shift");
    CLI::App* evolve = app.add_subcommand("evolve", "Trajectory of all measures as CSV");
    CLI::App* sweep = app.add_subcommand("sweep", "(p, t) surface of one measure as long CSV");
    CLI::App* events = app.add_subcommand("events", "Entanglement death and birth times");
    CLI::App* check = app.add_subcommand("check", "Run the oracle-equivalence suites");
    add_common(rates, false);
    add_common(evolve, true);
    add_common(sweep, true);
    add_common(events, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << TWOATOM_VERSION << "\n";
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    if (check->parsed()) return cmd_check(out);

    CLI::App* sub = nullptr;
    for (CLI::App* candidate : {rates, evolve, sweep, events})
        if (candidate->parsed()) sub = candidate;
    const Handles& h = handles.at(sub);
    auto given = [](const CLI::Option* o) { return o != nullptr && o->count() > 0; };

    RunConfig cfg;
    std::ostringstream buffer;
    int code = kSuccess;
    try {
        if (given(h.config)) {
            std::ifstream file(flags.config);
            if (!file) throw ConfigError("cannot read config file '" + flags.config + "'");
            cfg = parse_config_file(file, cfg);
        }
        if (given(h.distance)) cfg.distance = flags.distance;
        if (given(h.p)) {
            cfg.p = flags.p;
            cfg.p_range.reset();
        }
        if (given(h.p_range)) {
            cfg.p_range = parse_p_range(flags.p_range);
            if (!given(h.p)) cfg.p.reset();
        }
        if (given(h.tmax)) cfg.t_max = flags.tmax;
        if (given(h.steps)) cfg.t_steps = flags.steps;
        if (given(h.measures)) cfg.measures = parse_measures(flags.measures);
        if (given(h.oracle)) cfg.oracle_check = flags.oracle;
        if (given(h.output)) cfg.output_path = flags.output;

        if (sub == rates)
            code = cmd_rates(cfg, buffer);
        else if (sub == evolve)
            code = cmd_evolve(cfg, buffer);
        else if (sub == sweep)
            code = cmd_sweep(cfg, buffer);
        else
            code = cmd_events(cfg, buffer);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    if (cfg.output_path.empty()) {
        out << buffer.str();
        return code;
    }
    std::ofstream file(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << cfg.output_path << "' for writing\n";
        return kIoError;
    }
    file << buffer.str();
    file.flush();
    if (!file) {
        err << "error: write to '" << cfg.output_path << "' failed\n";
        return kIoError;
    }
    return code;
}

}  // namespace twoatom::cli
