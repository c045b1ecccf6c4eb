#include "twoatom/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace twoatom {

namespace {

constexpr double kClampWindow = 1e-10;

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::array<double, 4> sorted_desc(std::array<double, 4> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

// Eigenvalues of [[a, c], [c*, d]] with a, d real.
std::pair<double, double> block_eigs(double a, double d, cplx c) {
    const double mean = 0.5 * (a + d);
    const double half_diff = 0.5 * (a - d);
    const double r = std::sqrt(half_diff * half_diff + std::norm(c));
    return {mean + r, mean - r};
}

}  // namespace

namespace pauli {
const Matrix2c& identity() {
    static const Matrix2c m = Matrix2c::Identity();
    return m;
}
const Matrix2c& x() {
    static const Matrix2c m = [] {
        Matrix2c s;
        s << 0.0, 1.0, 1.0, 0.0;
        return s;
    }();
    return m;
}
const Matrix2c& y() {
    static const Matrix2c m = [] {
        Matrix2c s;
        s << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
        return s;
    }();
    return m;
}
const Matrix2c& z() {
    static const Matrix2c m = [] {
        Matrix2c s;
        s << 1.0, 0.0, 0.0, -1.0;
        return s;
    }();
    return m;
}
const Matrix2c& by_index(int k) {
    switch (k) {
        case 0: return x();
        case 1: return y();
        case 2: return z();
        default: throw std::out_of_range("pauli::by_index: index must be 0, 1 or 2");
    }
}
}  // namespace pauli

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

DensityMatrix4 DensityMatrix4::from_matrix(const Matrix4c& m, const StateTolerances& tol) {
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.hermitian)
        throw ValidationError("density matrix is not Hermitian (deviation " + fmt_value(herm) + ")");
    const double tr = std::abs(m.trace() - 1.0);
    if (tr > tol.trace)
        throw ValidationError("density matrix trace differs from 1 by " + fmt_value(tr));
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -tol.psd)
        throw ValidationError("density matrix is not positive semidefinite (eigenvalue " +
                              fmt_value(min_eig) + ")");
    return DensityMatrix4(m);
}

void XState::validate(double tol) const {
    double sum = 0.0;
    for (double v : pop) {
        if (v < -tol) throw ValidationError("X state has negative population " + fmt_value(v));
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
        throw ValidationError("X state populations sum to " + fmt_value(sum));
    if (std::norm(c14) > pop[0] * pop[3] + tol)
        throw ValidationError("X state outer block is not positive");
    if (std::norm(c23) > pop[1] * pop[2] + tol)
        throw ValidationError("X state inner block is not positive");
}

void CollectiveXState::validate(double tol) const {
    for (double v : {ee, ss, aa, gg})
        if (v < -tol) throw ValidationError("collective state has negative population " + fmt_value(v));
    const double sum = ee + ss + aa + gg;
    if (std::abs(sum - 1.0) > tol)
        throw ValidationError("collective state populations sum to " + fmt_value(sum));
    if (std::norm(as) > ss * aa + tol)
        throw ValidationError("collective state {s,a} block is not positive");
    if (std::norm(eg) > ee * gg + tol)
        throw ValidationError("collective state {e,g} block is not positive");
}

PureState4 make_bell_like(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("make_bell_like: p must lie in [0, 1], got " + fmt_value(p));
    PureState4 psi;
    psi.amplitudes << std::sqrt(p), 0.0, 0.0, std::sqrt(1.0 - p);
    return psi;
}

DensityMatrix4 to_density(const PureState4& psi) {
    return DensityMatrix4::unchecked(psi.amplitudes * psi.amplitudes.adjoint());
}

DensityMatrix4 to_density(const XState& x) {
    Matrix4c m = Matrix4c::Zero();
    for (int i = 0; i < 4; ++i) m(i, i) = x.pop[static_cast<std::size_t>(i)];
    m(0, 3) = x.c14;
    m(3, 0) = std::conj(x.c14);
    m(1, 2) = x.c23;
    m(2, 1) = std::conj(x.c23);
    return DensityMatrix4::unchecked(m);
}

bool is_x_state(const DensityMatrix4& rho, double tol) {
    const Matrix4c& m = rho.matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool x_slot = (i == j) || (i + j == 3);
            if (!x_slot && std::abs(m(i, j)) > tol) return false;
        }
    return true;
}

XState to_x_state(const DensityMatrix4& rho, double tol) {
    if (!is_x_state(rho, tol)) throw ValidationError("state is not X-shaped");
    const Matrix4c& m = rho.matrix();
    XState x;
    for (int i = 0; i < 4; ++i) x.pop[static_cast<std::size_t>(i)] = m(i, i).real();
    x.c14 = m(0, 3);
    x.c23 = m(1, 2);
    return x;
}

XState collective_to_product(const CollectiveXState& c) {
    const double tr = c.ee + c.ss + c.aa + c.gg;
    if (std::abs(tr - 1.0) > 1e-12)
        throw ValidationError("collective_to_product: trace differs from 1 by " + fmt_value(tr - 1.0));
    XState x;
    x.pop[0] = c.ee;
    x.pop[1] = 0.5 * (c.ss + c.aa + (c.as + c.sa()).real());
    x.pop[2] = 0.5 * (c.ss + c.aa - (c.as + c.sa()).real());
    x.pop[3] = 1.0 - x.pop[0] - x.pop[1] - x.pop[2];
    x.c14 = c.eg;
    x.c23 = 0.5 * (c.ss - c.aa + c.as - c.sa());
    return x;
}

CollectiveXState product_to_collective(const XState& x) {
    const double tr = x.pop[0] + x.pop[1] + x.pop[2] + x.pop[3];
    if (std::abs(tr - 1.0) > 1e-12)
        throw ValidationError("product_to_collective: trace differs from 1 by " + fmt_value(tr - 1.0));
    const cplx c32 = std::conj(x.c23);
    CollectiveXState c;
    c.ee = x.pop[0];
    c.ss = 0.5 * (x.pop[1] + x.pop[2] + (x.c23 + c32).real());
    c.aa = 0.5 * (x.pop[1] + x.pop[2] - (x.c23 + c32).real());
    c.gg = x.pop[3];
    c.as = 0.5 * (x.pop[1] - x.pop[2] + x.c23 - c32);
    c.eg = x.c14;
    return c;
}

Matrix2c partial_trace(const DensityMatrix4& rho, Subsystem traced_out) {
    const Matrix4c& m = rho.matrix();
    Matrix2c r = Matrix2c::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                if (traced_out == Subsystem::A)
                    r(i, j) += m(2 * k + i, 2 * k + j);
                else
                    r(i, j) += m(2 * i + k, 2 * j + k);
            }
    return r;
}

BlochForm bloch_decomposition(const DensityMatrix4& rho) {
    const Matrix4c& m = rho.matrix();
    const Matrix2c& id = pauli::identity();
    BlochForm b;
    for (int i = 0; i < 3; ++i) {
        const Matrix2c& s = pauli::by_index(i);
        b.sA(i) = (m * kron(s, id)).trace().real();
        b.sB(i) = (m * kron(id, s)).trace().real();
        for (int j = 0; j < 3; ++j)
            b.T(i, j) = (m * kron(s, pauli::by_index(j))).trace().real();
    }
    return b;
}

Matrix4c from_bloch(const BlochForm& b) {
    const Matrix2c& id = pauli::identity();
    Matrix4c m = kron(id, id);
    for (int i = 0; i < 3; ++i) {
        const Matrix2c& s = pauli::by_index(i);
        m += b.sA(i) * kron(s, id) + b.sB(i) * kron(id, s);
        for (int j = 0; j < 3; ++j) m += b.T(i, j) * kron(s, pauli::by_index(j));
    }
    return 0.25 * m;
}

DensityMatrix4 swap_subsystems(const DensityMatrix4& rho) {
    Eigen::PermutationMatrix<4> perm;
    perm.indices() << 0, 2, 1, 3;
    const Matrix4c m = perm * rho.matrix() * perm.transpose();
    return DensityMatrix4::unchecked(m);
}

XState swap_subsystems(const XState& x) {
    XState s = x;
    std::swap(s.pop[1], s.pop[2]);
    s.c23 = std::conj(x.c23);
    return s;
}

std::array<double, 4> eigenvalues_x(const XState& x) {
    const auto [o1, o2] = block_eigs(x.pop[0], x.pop[3], x.c14);
    const auto [i1, i2] = block_eigs(x.pop[1], x.pop[2], x.c23);
    return sorted_desc({o1, o2, i1, i2});
}

std::array<double, 4> eigenvalues(const DensityMatrix4& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho.matrix(), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return sorted_desc({ev(0), ev(1), ev(2), ev(3)});
}

double von_neumann_entropy(std::span<const double> spectrum) {
    double s = 0.0;
    for (double lambda : spectrum) {
        if (lambda < -kClampWindow)
            throw PositivityError("negative eigenvalue " + fmt_value(lambda) + " beyond clamping window");
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

double von_neumann_entropy(const Matrix2c& rho) {
    const auto [l1, l2] = block_eigs(rho(0, 0).real(), rho(1, 1).real(), rho(0, 1));
    const std::array<double, 2> spec{l1, l2};
    return von_neumann_entropy(spec);
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("binary_entropy: argument must lie in [0, 1], got " + fmt_value(x));
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace twoatom
