// cli.hpp — Subcommands of the `twoatom` tool. Each command writes to the
// stream it is handed so tests can drive it without spawning processes.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twoatom/measures.hpp"
#include "twoatom/oracle_check.hpp"

namespace twoatom::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailure = 1, kUsageError = 2, kIoError = 3 };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PRange {
    double first = 0.0;
    double last = 1.0;
    int count = 201;

    std::vector<double> values() const;
};

struct RunConfig {
    double distance = 0.125;  ///< r_AB / lambda
    std::optional<double> p;
    std::optional<PRange> p_range;
    double t_max = 10.0;
    std::optional<int> t_steps;
    std::vector<Measure> measures;  ///< empty: command default
    bool oracle_check = false;
    std::string output_path;
    std::string format = "csv";

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

PRange parse_p_range(const std::string& text);
std::vector<Measure> parse_measures(const std::string& text);
std::string measure_key(Measure m);

/// Flat `key = value` lines; '#' starts a comment. Keys mirror the long flags.
RunConfig parse_config_file(std::istream& in, RunConfig base = {});

int cmd_rates(const RunConfig& cfg, std::ostream& out);
int cmd_evolve(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_events(const RunConfig& cfg, std::ostream& out);
int cmd_check(std::ostream& out, const CheckOptions& opts = {}, const CheckHooks& hooks = {});

/// Full argument handling, including --output redirection and exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twoatom::cli
