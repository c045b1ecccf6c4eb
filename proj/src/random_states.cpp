#include "twoatom/random_states.hpp"

#include <cmath>

namespace twoatom {

namespace {

cplx gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

Matrix2c wishart2(Rng& rng) {
    Matrix2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = gaussian(rng);
    return g * g.adjoint();
}

}  // namespace

XState random_x_state(Rng& rng) {
    const Matrix2c outer = wishart2(rng);
    const Matrix2c inner = wishart2(rng);
    const double tr = (outer.trace() + inner.trace()).real();
    XState x;
    x.pop = {outer(0, 0).real() / tr, inner(0, 0).real() / tr, inner(1, 1).real() / tr,
             outer(1, 1).real() / tr};
    x.c14 = outer(0, 1) / tr;
    x.c23 = inner(0, 1) / tr;
    return x;
}

DensityMatrix4 random_density(Rng& rng) {
    Matrix4c g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = gaussian(rng);
    Matrix4c m = g * g.adjoint();
    m /= m.trace().real();
    m = 0.5 * (m + m.adjoint()).eval();
    return DensityMatrix4::unchecked(m);
}

Matrix2c random_unitary2(Rng& rng) {
    Matrix2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = gaussian(rng);
    Eigen::HouseholderQR<Matrix2c> qr(g);
    Matrix2c q = qr.householderQ();
    const Matrix2c r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < 2; ++k) {
        const cplx d = r(k, k);
        if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
    }
    return q;
}

Matrix4c random_hermitian(Rng& rng) {
    Matrix4c g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = gaussian(rng);
    Matrix4c h = 0.5 * (g + g.adjoint());
    h += ((1.0 - h.trace().real()) / 4.0) * Matrix4c::Identity();
    return h;
}

}  // namespace twoatom
