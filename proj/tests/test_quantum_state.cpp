#include <doctest.h>

#include <cmath>
#include <numbers>

#include "twoatom/quantum_state.hpp"
#include "twoatom/random_states.hpp"

using namespace twoatom;

namespace {

double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("bell-like family has the expected amplitudes") {
    const auto psi = make_bell_like(0.25);
    CHECK(std::abs(psi.amplitudes(0) - cplx(0.5)) < 1e-15);
    CHECK(std::abs(psi.amplitudes(3) - cplx(std::sqrt(0.75))) < 1e-15);
    CHECK(std::abs(psi.amplitudes(1)) == 0.0);
    CHECK(std::abs(psi.amplitudes.norm() - 1.0) < 1e-15);

    const auto rho = to_density(psi);
    CHECK(std::abs(rho(0, 3).real() - std::sqrt(0.25 * 0.75)) < 1e-15);
    CHECK(is_x_state(rho));

    CHECK_THROWS_AS(make_bell_like(-0.1), std::domain_error);
    CHECK_THROWS_AS(make_bell_like(1.5), std::domain_error);
}

TEST_CASE("density validation rejects broken matrices") {
    Matrix4c m = Matrix4c::Identity() * 0.25;
    CHECK_NOTHROW(DensityMatrix4::from_matrix(m));

    Matrix4c not_trace = m * 2.0;
    CHECK_THROWS_AS(DensityMatrix4::from_matrix(not_trace), ValidationError);

    Matrix4c not_herm = m;
    not_herm(0, 1) = cplx(0.1, 0.0);
    CHECK_THROWS_AS(DensityMatrix4::from_matrix(not_herm), ValidationError);

    Matrix4c negative = Matrix4c::Zero();
    negative(0, 0) = 1.2;
    negative(3, 3) = -0.2;
    CHECK_THROWS_AS(DensityMatrix4::from_matrix(negative), ValidationError);

    XState bad;
    bad.pop = {0.5, 0.0, 0.0, 0.5};
    bad.c14 = 0.6;  // |c14|^2 > p1 p4
    CHECK_THROWS(bad.validate());
}

TEST_CASE("collective and product bases round trip") {
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const XState x = random_x_state(rng);
        const XState back = collective_to_product(product_to_collective(x));
        CHECK(max_abs(to_density(back).matrix() - to_density(x).matrix()) < 1e-14);
    }
}

TEST_CASE("singlet is the antisymmetric collective state") {
    CollectiveXState c;
    c.gg = 0.0;
    c.aa = 1.0;
    const XState x = collective_to_product(c);
    CHECK(x.pop[1] == doctest::Approx(0.5));
    CHECK(x.pop[2] == doctest::Approx(0.5));
    CHECK(x.c23.real() == doctest::Approx(-0.5));

    // rho_as moves population between the single-excitation product states.
    CollectiveXState mix;
    mix.gg = 0.0;
    mix.ss = 0.5;
    mix.aa = 0.5;
    mix.as = 0.5;
    const XState y = collective_to_product(mix);
    CHECK(y.pop[1] == doctest::Approx(1.0));
    CHECK(std::abs(y.pop[2]) < 1e-15);
}

TEST_CASE("closed-form X spectrum matches the Hermitian solver") {
    Rng rng(12);
    for (int k = 0; k < 1000; ++k) {
        const XState x = random_x_state(rng);
        const auto fast = eigenvalues_x(x);
        const auto full = eigenvalues(to_density(x));
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(fast[i] - full[i]) < 1e-12);
    }
}

TEST_CASE("Bloch decomposition reconstructs the matrix") {
    Rng rng(13);
    for (int k = 0; k < 200; ++k) {
        const DensityMatrix4 rho = random_density(rng);
        CHECK(max_abs(from_bloch(bloch_decomposition(rho)) - rho.matrix()) < 1e-14);
    }
    // |Phi+> has T = diag(1, -1, 1) and no local vectors.
    const BlochForm b = bloch_decomposition(to_density(make_bell_like(0.5)));
    CHECK(b.sA.norm() < 1e-15);
    CHECK(b.sB.norm() < 1e-15);
    CHECK(b.T(0, 0) == doctest::Approx(1.0));
    CHECK(b.T(1, 1) == doctest::Approx(-1.0));
    CHECK(b.T(2, 2) == doctest::Approx(1.0));
}

TEST_CASE("partial traces and swap") {
    const auto rho = to_density(make_bell_like(0.3));
    const Matrix2c rb = partial_trace(rho, Subsystem::A);
    CHECK(rb(0, 0).real() == doctest::Approx(0.3));
    CHECK(rb(1, 1).real() == doctest::Approx(0.7));
    CHECK(std::abs(rb(0, 1)) < 1e-15);

    Rng rng(14);
    const DensityMatrix4 r = random_density(rng);
    const DensityMatrix4 s = swap_subsystems(r);
    CHECK((partial_trace(r, Subsystem::A) - partial_trace(s, Subsystem::B)).cwiseAbs().maxCoeff() <
          1e-15);
    CHECK(max_abs(swap_subsystems(s).matrix() - r.matrix()) < 1e-15);

    const XState x = random_x_state(rng);
    CHECK(max_abs(to_density(swap_subsystems(x)).matrix() - swap_subsystems(to_density(x)).matrix()) <
          1e-15);
}

TEST_CASE("entropies") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    const std::array<double, 4> mixed{0.25, 0.25, 0.25, 0.25};
    CHECK(von_neumann_entropy(mixed) == doctest::Approx(2.0));

    const std::array<double, 4> tiny{1.0 + 5e-11, -5e-11, 0.0, 0.0};
    CHECK(von_neumann_entropy(tiny) == doctest::Approx(0.0).epsilon(1e-9));
    const std::array<double, 4> bad{1.1, -0.1, 0.0, 0.0};
    CHECK_THROWS_AS(von_neumann_entropy(bad), PositivityError);
}

TEST_CASE("X-structure detection") {
    Rng rng(15);
    CHECK(is_x_state(to_density(random_x_state(rng))));
    const DensityMatrix4 g = random_density(rng);
    CHECK_FALSE(is_x_state(g));
    CHECK_THROWS_AS(to_x_state(g), ValidationError);
}

TEST_CASE("kron orders atom A as the major index") {
    const Matrix4c zz = kron(pauli::z(), pauli::identity());
    CHECK(zz(0, 0).real() == 1.0);
    CHECK(zz(1, 1).real() == 1.0);
    CHECK(zz(2, 2).real() == -1.0);
}
