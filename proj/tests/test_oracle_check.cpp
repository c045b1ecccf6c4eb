#include <doctest.h>

#include "twoatom/oracle_check.hpp"

using namespace twoatom;

TEST_CASE("all suites pass with the shipped implementation") {
    CheckOptions opts;
    opts.integrator_samples = 3;
    const CheckReport report = run_oracle_checks(opts);
    CHECK(report.suites.size() == 8);
    for (const auto& s : report.suites) {
        INFO(s.name << " dev=" << s.max_deviation);
        CHECK(s.passed);
    }
    CHECK(report.passed());
}

TEST_CASE("a throwing hook is reported as a failed suite") {
    CheckOptions opts;
    opts.integrator_samples = 1;
    opts.x_samples = 10;
    opts.general_samples = 10;
    opts.discord_times = 2;
    CheckHooks hooks;
    hooks.collective_to_product = [](const CollectiveXState&) -> XState {
        throw std::runtime_error("boom");
    };
    const CheckReport report = run_oracle_checks(opts, hooks);
    CHECK_FALSE(report.passed());
    REQUIRE_FALSE(report.suites.empty());
    CHECK(report.suites.front().name == "basis-change");
    CHECK_FALSE(report.suites.front().passed);
    CHECK(report.suites.front().detail.find("boom") != std::string::npos);
}
