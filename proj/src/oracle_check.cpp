#include "twoatom/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "twoatom/dynamics.hpp"
#include "twoatom/measures.hpp"
#include "twoatom/random_states.hpp"
#include "twoatom/sweep.hpp"

namespace twoatom {

namespace {

// Columns are |e>, |s>, |a>, |g> in the product basis.
Matrix4c collective_basis() {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix4c u = Matrix4c::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = h;
    u(2, 1) = h;
    u(1, 2) = h;
    u(2, 2) = -h;
    u(3, 3) = 1.0;
    return u;
}

SuiteResult finish(std::string name, double dev, double tol, std::string detail = {}) {
    SuiteResult r;
    r.name = std::move(name);
    r.max_deviation = dev;
    r.tolerance = tol;
    r.passed = std::isfinite(dev) && dev <= tol;
    r.detail = std::move(detail);
    return r;
}

SuiteResult basis_change_suite(const CheckOptions& opts, const CheckHooks& hooks) {
    Rng rng(opts.seed);
    const Matrix4c u = collective_basis();
    double dev = 0.0;
    for (int k = 0; k < opts.basis_samples; ++k) {
        const XState x = random_x_state(rng);
        const Matrix4c coll = u.adjoint() * to_density(x).matrix() * u;
        CollectiveXState c;
        c.ee = coll(0, 0).real();
        c.ss = coll(1, 1).real();
        c.aa = coll(2, 2).real();
        c.gg = coll(3, 3).real();
        c.as = coll(2, 1);
        c.eg = coll(0, 3);
        const XState back = hooks.collective_to_product(c);
        dev = std::max(dev, (to_density(back).matrix() - to_density(x).matrix()).cwiseAbs().maxCoeff());
    }
    return finish("basis-change", dev, 1e-14, "collective map vs explicit unitary basis change");
}

SuiteResult integrator_suite(const CheckOptions& opts) {
    Rng rng(opts.seed + 1);
    double dev = 0.0;
    const TimeGrid grid = TimeGrid::uniform(opts.integrator_t_max, 51);
    for (double kr : {std::numbers::pi / 4.0, std::numbers::pi}) {
        const CollectiveParams params = CollectiveParams::from_kr(kr);
        std::vector<XState> xs;
        std::vector<DensityMatrix4> rhos;
        for (int k = 0; k < opts.integrator_samples; ++k) {
            xs.push_back(random_x_state(rng));
            rhos.push_back(to_density(xs.back()));
        }
        const auto traj = MasterEquationIntegrator(params, opts.integrator_dt).integrate(rhos, grid);
        for (std::size_t k = 0; k < xs.size(); ++k)
            for (std::size_t n = 0; n < grid.size(); ++n) {
                const Matrix4c exact = to_density(analytic_propagate(xs[k], params, grid[n])).matrix();
                dev = std::max(dev, (exact - traj[k][n].matrix()).cwiseAbs().maxCoeff());
            }
    }
    return finish("analytic-vs-integrator", dev, 1e-8, "kr in {pi/4, pi}");
}

std::vector<SuiteResult> x_path_suites(const CheckOptions& opts) {
    Rng rng(opts.seed + 2);
    double dc = 0.0, dg = 0.0, de = 0.0;
    for (int k = 0; k < opts.x_samples; ++k) {
        const XState x = random_x_state(rng);
        const DensityMatrix4 rho = to_density(x);
        dc = std::max(dc, std::abs(concurrence_x(x) - concurrence_general(rho)));
        dg = std::max(dg, std::abs(geometric_discord_x(x) - geometric_discord(rho)));
        const auto fast = eigenvalues_x(x);
        const auto full = eigenvalues(rho);
        for (std::size_t i = 0; i < 4; ++i) de = std::max(de, std::abs(fast[i] - full[i]));
    }
    return {finish("x-path-concurrence", dc, 1e-10, "closed form vs Wootters construction"),
            finish("x-path-geometric-discord", dg, 1e-12, "closed form vs K-matrix eigenvalue"),
            finish("x-path-spectrum", de, 1e-12, "closed form vs Hermitian eigensolver")};
}

std::vector<SuiteResult> discord_suites(const CheckOptions& opts) {
    const CollectiveParams params = CollectiveParams::from_distance(0.125);
    double dev = 0.0;
    for (double p : {0.3, 2.0 / 3.0, 1.0})
        for (int k = 0; k < opts.discord_times; ++k) {
            const double t = 10.0 * k / std::max(1, opts.discord_times - 1);
            const XState x = evolve_bell_like(p, params, t);
            dev = std::max(dev, std::abs(discord_ali(x) - discord_bruteforce(to_density(x)).value));
        }

    // On generic X states the closed form is only an upper bound.
    Rng rng(opts.seed + 3);
    double excess = 0.0;
    for (int k = 0; k < opts.discord_times * 3; ++k) {
        const XState x = random_x_state(rng);
        excess = std::max(excess, discord_bruteforce(to_density(x)).value - discord_ali(x));
    }
    return {finish("ali-vs-bruteforce", dev, 1e-4, "initial-family states at r = lambda/8"),
            finish("bruteforce-below-ali", std::max(0.0, excess), 1e-6, "random X states")};
}

SuiteResult bound_suite(const CheckOptions& opts) {
    Rng rng(opts.seed + 4);
    double worst = 0.0;
    for (int k = 0; k < opts.general_samples; ++k) {
        const DensityMatrix4 rho = random_density(rng);
        worst = std::max(worst, observable_bound(rho) - geometric_discord(rho));
    }
    return finish("bound-ordering", std::max(0.0, worst), 1e-9, "observable bound <= geometric discord");
}

}  // namespace

bool CheckReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

CheckReport run_oracle_checks(const CheckOptions& opts, const CheckHooks& hooks) {
    CheckReport report;
    auto guarded = [&report](std::string name, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            SuiteResult r;
            r.name = std::move(name);
            r.max_deviation = std::numeric_limits<double>::infinity();
            r.detail = std::string("exception: ") + e.what();
            report.suites.push_back(r);
        }
    };
    guarded("basis-change", [&] { report.suites.push_back(basis_change_suite(opts, hooks)); });
    guarded("analytic-vs-integrator", [&] { report.suites.push_back(integrator_suite(opts)); });
    guarded("x-path", [&] {
        for (auto& s : x_path_suites(opts)) report.suites.push_back(std::move(s));
    });
    guarded("ali-vs-bruteforce", [&] {
        for (auto& s : discord_suites(opts)) report.suites.push_back(std::move(s));
    });
    guarded("bound-ordering", [&] { report.suites.push_back(bound_suite(opts)); });
    return report;
}

}  // namespace twoatom
