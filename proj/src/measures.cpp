#include "twoatom/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace twoatom {

namespace {

constexpr double kMeasureWindow = 1e-9;
constexpr double kRadicandClamp = 1e-12;

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// Entropy of a qubit with Bloch vector length r.
double bloch_entropy(double r) {
    return binary_entropy(std::clamp(0.5 * (1.0 + r), 0.0, 1.0));
}

double clamp_measure(double v, const char* what) {
    if (v < -kMeasureWindow || v > 1.0 + kMeasureWindow)
        throw ConsistencyError(std::string(what) + " out of range: " + fmt_value(v));
    return std::clamp(v, 0.0, 1.0);
}

double observable_bound_from_k(const Eigen::Matrix3d& k) {
    const double tr = k.trace();
    const double tr2 = (k * k).trace();
    double radicand = 6.0 * tr2 - 2.0 * tr * tr;
    if (radicand < 0.0) {
        if (radicand < -kRadicandClamp)
            throw ConsistencyError("observable_bound: negative radicand " + fmt_value(radicand));
        radicand = 0.0;
    }
    return (2.0 * tr - std::sqrt(radicand)) / 6.0;
}

Eigen::Vector3d direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Golden-section minimisation of f on [lo, hi] down to a bracket of width tol.
template <class F>
double golden_section(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? c : d;
}

}  // namespace

double MeasureSet::get(Measure m) const {
    switch (m) {
        case Measure::Concurrence: return concurrence;
        case Measure::Discord: return discord;
        case Measure::GeometricDiscord: return geometric_discord;
        case Measure::ObservableBound: return observable_bound;
    }
    return 0.0;
}

Eigen::Vector3d MeasurementDirection::unit_vector() const { return direction(theta, phi); }

double concurrence_x(const XState& x) {
    const double c1 = 2.0 * (std::abs(x.c14) - std::sqrt(std::max(0.0, x.pop[1] * x.pop[2])));
    const double c2 = 2.0 * (std::abs(x.c23) - std::sqrt(std::max(0.0, x.pop[0] * x.pop[3])));
    return std::max({0.0, c1, c2});
}

double concurrence_general(const DensityMatrix4& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho.matrix());
    const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix4c sqrt_rho = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
    const Matrix4c flip = kron(pauli::y(), pauli::y());
    const Matrix4c a = sqrt_rho * flip * sqrt_rho.conjugate();
    Eigen::JacobiSVD<Matrix4c> svd(a);
    const Eigen::Vector4d s = svd.singularValues();  // descending
    return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double discord_ali(const XState& x) {
    const double pb_excited = x.pop[0] + x.pop[2];
    const double s_b = binary_entropy(std::clamp(pb_excited, 0.0, 1.0));
    const auto spectrum = eigenvalues_x(x);
    const double s_total = von_neumann_entropy(spectrum);

    const double sz_a = x.pop[0] + x.pop[1] - x.pop[2] - x.pop[3];
    const double eta = std::abs(x.c14) + std::abs(x.c23);
    const double k1 = bloch_entropy(std::sqrt(sz_a * sz_a + 4.0 * eta * eta));
    const double k2 = von_neumann_entropy(x.pop) - s_b;

    return clamp_measure(s_b - s_total + std::min(k1, k2), "discord_ali");
}

double measured_conditional_entropy(const BlochForm& b, const Eigen::Vector3d& n) {
    const double bias = n.dot(b.sB);
    const Eigen::Vector3d tn = b.T * n;
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
        const double weight = 1.0 + sign * bias;  // 2 p_b
        if (weight <= 0.0) continue;
        const double r = (b.sA + sign * tn).norm() / weight;
        total += 0.5 * weight * bloch_entropy(std::min(r, 1.0));
    }
    return total;
}

DiscordSearchResult discord_bruteforce(const DensityMatrix4& rho, const DiscordSearchOptions& opts) {
    if (opts.theta_points < 2 || opts.phi_points < 1 || !(opts.refine_tol > 0.0))
        throw std::invalid_argument("discord_bruteforce: invalid search options");

    const BlochForm b = bloch_decomposition(rho);
    const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    const auto spectrum = eigenvalues(rho);
    const double s_total = von_neumann_entropy(spectrum);

    const int nt = opts.theta_points;
    const int np = opts.phi_points;
    const double dtheta = std::numbers::pi / (nt - 1);
    const double dphi = 2.0 * std::numbers::pi / np;

    std::vector<double> grid(static_cast<std::size_t>(nt) * static_cast<std::size_t>(np));
    auto fill_rows = [&](int row_begin, int row_end) {
        for (int i = row_begin; i < row_end; ++i)
            for (int j = 0; j < np; ++j)
                grid[static_cast<std::size_t>(i) * np + j] =
                    measured_conditional_entropy(b, direction(i * dtheta, j * dphi));
    };
    const int threads = std::clamp(opts.threads, 1, nt);
    if (threads == 1) {
        fill_rows(0, nt);
    } else {
        std::vector<std::jthread> workers;
        const int chunk = (nt + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            const int lo = w * chunk;
            const int hi = std::min(nt, lo + chunk);
            if (lo < hi) workers.emplace_back(fill_rows, lo, hi);
        }
    }

    // First strict minimum in (theta, phi) order.
    std::size_t best = 0;
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (grid[k] < grid[best]) best = k;
    double theta = static_cast<double>(best / static_cast<std::size_t>(np)) * dtheta;
    double phi = static_cast<double>(best % static_cast<std::size_t>(np)) * dphi;
    double best_value = grid[best];

    auto f = [&](double th, double ph) { return measured_conditional_entropy(b, direction(th, ph)); };
    // Alternating golden-section passes; the bracket halves after every pass.
    for (double width = std::max(dtheta, dphi); width > opts.refine_tol; width *= 0.5) {
        const double theta_new =
            golden_section([&](double th) { return f(th, phi); }, theta - width, theta + width,
                           opts.refine_tol);
        const double phi_new =
            golden_section([&](double ph) { return f(theta_new, ph); }, phi - width, phi + width,
                           opts.refine_tol);
        const double candidate = f(theta_new, phi_new);
        if (candidate <= best_value) {
            best_value = candidate;
            theta = theta_new;
            phi = phi_new;
        }
    }

    // Newton polish in tangent-plane coordinates around the current direction;
    // the angle passes zig-zag when theta and phi are coupled, and phi is
    // meaningless at the poles.
    Eigen::Vector3d n = direction(theta, phi);
    for (int iter = 0; iter < 8; ++iter) {
        const Eigen::Vector3d e1 = n.unitOrthogonal();
        const Eigen::Vector3d e2 = n.cross(e1);
        auto g = [&](double u, double v) {
            return measured_conditional_entropy(b, (n + u * e1 + v * e2).normalized());
        };
        constexpr double h = 1e-4;
        const double f0 = g(0, 0);
        const double fu_p = g(h, 0), fu_m = g(-h, 0), fv_p = g(0, h), fv_m = g(0, -h);
        const double fuv = (g(h, h) - g(h, -h) - g(-h, h) + g(-h, -h)) / (4 * h * h);
        const Eigen::Vector2d grad((fu_p - fu_m) / (2 * h), (fv_p - fv_m) / (2 * h));
        Eigen::Matrix2d hess;
        hess << (fu_p - 2 * f0 + fu_m) / (h * h), fuv, fuv, (fv_p - 2 * f0 + fv_m) / (h * h);
        const Eigen::LLT<Eigen::Matrix2d> llt(hess);
        if (llt.info() != Eigen::Success) break;
        const Eigen::Vector2d step = -llt.solve(grad);
        if (!step.allFinite() || step.norm() > 10 * std::max(dtheta, dphi)) break;
        const Eigen::Vector3d trial = (n + step(0) * e1 + step(1) * e2).normalized();
        const double value = measured_conditional_entropy(b, trial);
        if (!(value < best_value)) break;
        best_value = value;
        n = trial;
        if (step.norm() < opts.refine_tol) break;
    }

    DiscordSearchResult out;
    out.conditional_entropy = best_value;
    out.direction.theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    double az = std::atan2(n.y(), n.x());
    if (az < 0.0) az += 2.0 * std::numbers::pi;
    out.direction.phi = az;
    out.value = clamp_measure(s_b - s_total + best_value, "discord_bruteforce");
    return out;
}

Eigen::Matrix3d correlation_k(const BlochForm& b) {
    return b.sB * b.sB.transpose() + b.T.transpose() * b.T;
}

double geometric_discord(const DensityMatrix4& rho) {
    const BlochForm b = bloch_decomposition(rho);
    const Eigen::Matrix3d k = correlation_k(b);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(k, Eigen::EigenvaluesOnly);
    const double k_max = es.eigenvalues().maxCoeff();
    return 0.5 * (b.sB.squaredNorm() + b.T.squaredNorm() - k_max);
}

double geometric_discord_x(const XState& x) {
    const double a = std::abs(x.c14);
    const double c = std::abs(x.c23);
    const double sz_b = x.pop[0] - x.pop[1] + x.pop[2] - x.pop[3];
    const double t_zz = x.pop[0] - x.pop[1] - x.pop[2] + x.pop[3];
    const double g1 = 4.0 * (a * a + c * c);
    const double g2 = 2.0 * (a - c) * (a - c) + 0.5 * (sz_b * sz_b + t_zz * t_zz);
    return std::min(g1, g2);
}

double observable_bound(const DensityMatrix4& rho) {
    return observable_bound_from_k(correlation_k(bloch_decomposition(rho)));
}

MeasureSet measure_x(const XState& x_in, Subsystem measured) {
    const XState x = measured == Subsystem::B ? x_in : swap_subsystems(x_in);
    MeasureSet m;
    m.concurrence = clamp_measure(concurrence_x(x), "concurrence");
    m.discord = discord_ali(x);
    m.geometric_discord = clamp_measure(geometric_discord_x(x), "geometric discord");

    // K is diagonal up to a rotation about z that does not change its spectrum.
    const double a = std::abs(x.c14);
    const double c = std::abs(x.c23);
    const double sz_b = x.pop[0] - x.pop[1] + x.pop[2] - x.pop[3];
    const double t_zz = x.pop[0] - x.pop[1] - x.pop[2] + x.pop[3];
    const Eigen::Matrix3d k =
        Eigen::Vector3d(4.0 * (a + c) * (a + c), 4.0 * (a - c) * (a - c), sz_b * sz_b + t_zz * t_zz)
            .asDiagonal();
    m.observable_bound = clamp_measure(observable_bound_from_k(k), "observable bound");
    return m;
}

MeasureReport measure_all(const DensityMatrix4& rho_in, const MeasureOptions& opts) {
    const DensityMatrix4 rho = opts.measured == Subsystem::B ? rho_in : swap_subsystems(rho_in);
    MeasureReport report;
    if (is_x_state(rho, opts.x_tolerance)) {
        report.used_x_path = true;
        report.values = measure_x(to_x_state(rho, opts.x_tolerance));
    } else {
        MeasureSet& m = report.values;
        m.concurrence = clamp_measure(concurrence_general(rho), "concurrence");
        m.discord = discord_bruteforce(rho, opts.discord_search).value;
        m.geometric_discord = clamp_measure(geometric_discord(rho), "geometric discord");
        m.observable_bound = clamp_measure(observable_bound(rho), "observable bound");
    }

    if (opts.oracle_check) {
        MeasureSet oracle;
        oracle.concurrence = std::clamp(concurrence_general(rho), 0.0, 1.0);
        oracle.discord = discord_bruteforce(rho, opts.discord_search).value;
        oracle.geometric_discord = std::clamp(geometric_discord(rho), 0.0, 1.0);
        oracle.observable_bound = std::clamp(observable_bound(rho), 0.0, 1.0);
        double dev = 0.0;
        for (Measure q : {Measure::Concurrence, Measure::Discord, Measure::GeometricDiscord,
                          Measure::ObservableBound})
            dev = std::max(dev, std::abs(report.values.get(q) - oracle.get(q)));
        report.max_oracle_deviation = dev;
    }
    return report;
}

}  // namespace twoatom
