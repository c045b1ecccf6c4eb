// oracle_check.hpp — Self-check suites comparing every fast path with its
// independent oracle. Backs the `check` subcommand.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "twoatom/quantum_state.hpp"

namespace twoatom {

struct SuiteResult {
    std::string name;
    bool passed = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct CheckReport {
    std::vector<SuiteResult> suites;

    bool passed() const;
};

struct CheckOptions {
    std::uint64_t seed = 20120817;
    int basis_samples = 200;
    int integrator_samples = 10;
    double integrator_t_max = 5.0;
    double integrator_dt = 1e-4;
    int x_samples = 500;
    int general_samples = 500;
    int discord_times = 10;  ///< per p in {0.3, 2/3, 1}
};

/// Substitutable pieces, so that a deliberately broken implementation can be
/// shown to fail the suite that guards it.
struct CheckHooks {
    std::function<XState(const CollectiveXState&)> collective_to_product =
        [](const CollectiveXState& c) { return twoatom::collective_to_product(c); };
};

CheckReport run_oracle_checks(const CheckOptions& opts = {}, const CheckHooks& hooks = {});

}  // namespace twoatom
