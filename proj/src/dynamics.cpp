#include "twoatom/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace twoatom {

namespace {

constexpr double kSeriesBelow = 1e-2;
constexpr double kDivergenceWarningBelow = 0.05;
constexpr double kDegenerateRate = 1e-8;

// (e^{-rate2 t} - e^{-2 gamma t}) for rate2 = 2 gamma - delta, written so that
// small delta t does not cancel.
double feeding_difference(double delta, double gamma, double t) {
    const double decay = std::exp(-2.0 * gamma * t);
    if (std::abs(delta * t) < 1.0) return decay * std::expm1(delta * t);
    return std::exp(-(2.0 * gamma - delta) * t) - decay;
}

}  // namespace

CollectiveRates collective_rates(double kr) {
    if (!(kr > 0.0) || !std::isfinite(kr))
        throw std::domain_error("collective_rates: kr must be positive");
    CollectiveRates r;
    const double x = kr;
    const double s = std::sin(x);
    const double c = std::cos(x);
    if (x < kSeriesBelow) {
        const double x2 = x * x;
        r.gamma12 = 1.0 - x2 / 5.0 + 3.0 * x2 * x2 / 280.0 - x2 * x2 * x2 / 3780.0;
    } else {
        r.gamma12 = 1.5 * (s / x + c / (x * x) - s / (x * x * x));
    }
    r.omega12 = 0.75 * (-c / x + s / (x * x) + c / (x * x * x));
    r.omega12_diverging = x < kDivergenceWarningBelow;
    return r;
}

void CollectiveParams::validate() const {
    if (!(gamma > 0.0)) throw std::domain_error("CollectiveParams: gamma must be positive");
    if (std::abs(gamma12) > gamma)
        throw std::domain_error("CollectiveParams: |gamma12| must not exceed gamma");
    if (!std::isfinite(omega12) || !std::isfinite(omega0))
        throw std::domain_error("CollectiveParams: frequencies must be finite");
}

CollectiveParams CollectiveParams::from_kr(double kr) {
    const CollectiveRates r = collective_rates(kr);
    CollectiveParams p;
    p.gamma12 = r.gamma12;
    p.omega12 = r.omega12;
    p.kr = kr;
    return p;
}

CollectiveParams CollectiveParams::from_distance(double r_over_lambda) {
    if (!(r_over_lambda > 0.0))
        throw std::domain_error("CollectiveParams: distance must be positive");
    return from_kr(2.0 * std::numbers::pi * r_over_lambda);
}

TimeGrid::TimeGrid(std::vector<double> t_values) : t_(std::move(t_values)) {
    if (t_.empty()) throw std::domain_error("TimeGrid: empty grid");
    if (!(t_.front() >= 0.0)) throw std::domain_error("TimeGrid: times must be non-negative");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1])) throw std::domain_error("TimeGrid: times must be strictly increasing");
}

TimeGrid TimeGrid::uniform(double t_max, int steps) {
    if (!(t_max > 0.0) || steps < 2)
        throw std::domain_error("TimeGrid::uniform: need t_max > 0 and at least 2 points");
    std::vector<double> t(static_cast<std::size_t>(steps));
    const double h = t_max / (steps - 1);
    for (int i = 0; i < steps; ++i) t[static_cast<std::size_t>(i)] = i * h;
    t.back() = t_max;
    return TimeGrid(std::move(t));
}

CollectiveXState analytic_propagate(const CollectiveXState& x0, const CollectiveParams& params,
                                    double t) {
    if (!(t >= 0.0)) throw std::domain_error("analytic_propagate: t must be non-negative");
    params.validate();
    const double g = params.gamma;
    const double gp = params.gamma_plus();
    const double gm = params.gamma_minus();

    CollectiveXState x;
    x.ee = x0.ee * std::exp(-2.0 * g * t);

    // Symmetric state: fed by |e> at rate Gamma_+, decays at Gamma_+.
    double feed_s = 0.0;
    if (std::abs(gm) < kDegenerateRate * g)
        feed_s = gp * t * std::exp(-2.0 * g * t);
    else
        feed_s = (gp / gm) * feeding_difference(gm, g, t);
    x.ss = x0.ss * std::exp(-gp * t) + x0.ee * feed_s;

    double feed_a = 0.0;
    if (std::abs(gp) < kDegenerateRate * g)
        feed_a = gm * t * std::exp(-2.0 * g * t);
    else
        feed_a = (gm / gp) * feeding_difference(gp, g, t);
    x.aa = x0.aa * std::exp(-gm * t) + x0.ee * feed_a;

    // |s> sits at +Omega12 and |a> at -Omega12, so <a|rho|s> rotates as e^{+2i Omega12 t}.
    x.as = x0.as * std::exp(cplx(-g * t, 2.0 * params.omega12 * t));
    x.eg = x0.eg * std::exp(cplx(-g * t, -2.0 * params.omega0 * t));
    x.gg = 1.0 - x.ee - x.ss - x.aa;
    return x;
}

XState analytic_propagate(const XState& x0, const CollectiveParams& params, double t) {
    return collective_to_product(analytic_propagate(product_to_collective(x0), params, t));
}

VecRho vectorize(const Matrix4c& m) {
    VecRho v;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) v(4 * i + j) = m(i, j);
    return v;
}

Matrix4c unvectorize(const VecRho& v) {
    Matrix4c m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = v(4 * i + j);
    return m;
}

Matrix4c raising(int atom) {
    Matrix2c sp = Matrix2c::Zero();
    sp(0, 1) = 1.0;  // |e><g|
    const Matrix2c& id = pauli::identity();
    return atom == 0 ? kron(sp, id) : kron(id, sp);
}

Matrix4c lowering(int atom) { return raising(atom).adjoint(); }

Matrix4c energy_operator(int atom) {
    const Matrix2c sz = 0.5 * pauli::z();
    const Matrix2c& id = pauli::identity();
    return atom == 0 ? kron(sz, id) : kron(id, sz);
}

Matrix4c coherent_hamiltonian(const CollectiveParams& params) {
    Matrix4c h = params.omega0 * (energy_operator(0) + energy_operator(1));
    h += params.omega12 * (raising(0) * lowering(1) + raising(1) * lowering(0));
    return h;
}

Matrix4c apply_dissipator(const CollectiveParams& params, const Matrix4c& rho) {
    Matrix4c out = Matrix4c::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double rate = (i == j) ? params.gamma : params.gamma12;
            if (rate == 0.0) continue;
            const Matrix4c up = raising(i);
            const Matrix4c down = lowering(j);
            const Matrix4c updown = up * down;
            out -= 0.5 * rate * (rho * updown + updown * rho - 2.0 * down * rho * up);
        }
    return out;
}

Liouvillian::Liouvillian(const CollectiveParams& params) {
    params.validate();
    const Matrix4c h = coherent_hamiltonian(params);
    const cplx minus_i(0.0, -1.0);
    for (int col = 0; col < 16; ++col) {
        Matrix4c e = Matrix4c::Zero();
        e(col / 4, col % 4) = 1.0;
        const Matrix4c image = minus_i * (h * e - e * h) + apply_dissipator(params, e);
        l_.col(col) = vectorize(image);
    }
}

Liouvillian build_liouvillian(const CollectiveParams& params) { return Liouvillian(params); }

MasterEquationIntegrator::MasterEquationIntegrator(const CollectiveParams& params, double dt)
    : dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::domain_error("MasterEquationIntegrator: dt must be positive");
    params.validate();

    Eigen::SelfAdjointEigenSolver<Matrix4c> es(coherent_hamiltonian(params));
    basis_ = es.eigenvectors();
    const Eigen::Vector4d energy = es.eigenvalues();
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) bohr_(4 * k + l) = energy(k) - energy(l);

    for (int col = 0; col < 16; ++col) {
        Matrix4c e = Matrix4c::Zero();
        e(col / 4, col % 4) = 1.0;
        const Matrix4c lab = basis_ * e * basis_.adjoint();
        dissipator_.col(col) = vectorize(basis_.adjoint() * apply_dissipator(params, lab) * basis_);
    }
    full_step_ = step_map(dt_);
}

Superop MasterEquationIntegrator::step_map(double h) const {
    // Interaction picture: rho'(t) = F(t) v(t), F(t) = diag(exp(-i bohr t)),
    // dv/dt = F(t)^* D F(t) v.
    auto phase = [this](double t) {
        Eigen::Matrix<cplx, 16, 1> f;
        for (int k = 0; k < 16; ++k) f(k) = std::polar(1.0, -bohr_(k) * t);
        return f;
    };
    const auto f_half = phase(0.5 * h);
    const auto f_full = phase(h);
    auto generator = [this](const Eigen::Matrix<cplx, 16, 1>& f, const Superop& v) -> Superop {
        Superop rotated = f.asDiagonal() * v;
        Superop out = dissipator_ * rotated;
        return f.conjugate().asDiagonal() * out;
    };

    const Superop id = Superop::Identity();
    const Superop k1 = dissipator_;
    const Superop k2 = generator(f_half, id + 0.5 * h * k1);
    const Superop k3 = generator(f_half, id + 0.5 * h * k2);
    const Superop k4 = generator(f_full, id + h * k3);
    const Superop v1 = id + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return f_full.asDiagonal() * v1;
}

VecRho MasterEquationIntegrator::to_eigenbasis(const Matrix4c& rho) const {
    return vectorize(basis_.adjoint() * rho * basis_);
}

Matrix4c MasterEquationIntegrator::from_eigenbasis(const VecRho& v) const {
    return basis_ * unvectorize(v) * basis_.adjoint();
}

std::vector<DensityMatrix4> MasterEquationIntegrator::integrate(const DensityMatrix4& rho0,
                                                                const TimeGrid& grid) const {
    const std::span<const DensityMatrix4> one(&rho0, 1);
    return std::move(integrate(one, grid).front());
}

std::vector<std::vector<DensityMatrix4>> MasterEquationIntegrator::integrate(
    std::span<const DensityMatrix4> rho0, const TimeGrid& grid) const {
    const auto count = static_cast<Eigen::Index>(rho0.size());
    Batch state(16, count);
    for (Eigen::Index k = 0; k < count; ++k)
        state.col(k) = to_eigenbasis(rho0[static_cast<std::size_t>(k)].matrix());

    std::vector<std::vector<DensityMatrix4>> out(rho0.size());
    for (auto& traj : out) traj.reserve(grid.size());

    Batch scratch(16, count);
    double t = 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double span = grid[n] - t;
        const double ratio = span / dt_;
        long long steps = std::llround(ratio);
        if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio))
            steps = static_cast<long long>(std::floor(ratio));
        const double remainder = span - static_cast<double>(steps) * dt_;

        for (long long s = 0; s < steps; ++s) {
            scratch.noalias() = full_step_ * state;
            state.swap(scratch);
        }
        if (remainder > 1e-9 * dt_) {
            const Superop partial = step_map(remainder);
            scratch.noalias() = partial * state;
            state.swap(scratch);
        }
        t = grid[n];

        for (Eigen::Index k = 0; k < count; ++k)
            out[static_cast<std::size_t>(k)].push_back(
                DensityMatrix4::unchecked(from_eigenbasis(state.col(k))));
    }
    return out;
}

std::vector<DensityMatrix4> integrate_master_equation(const DensityMatrix4& rho0,
                                                      const CollectiveParams& params,
                                                      const TimeGrid& grid, double dt) {
    return MasterEquationIntegrator(params, dt).integrate(rho0, grid);
}

}  // namespace twoatom
