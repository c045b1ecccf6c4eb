// quantum_state.hpp — Two-qubit states in the product and collective bases,
// Bloch decomposition, spectra and entropies.
//
// Product basis ordering (atom A major):
//   index 0 = |e_A e_B>, 1 = |e_A g_B>, 2 = |g_A e_B>, 3 = |g_A g_B>
// Collective basis:
//   |e> = |e_A e_B>, |s> = (|e_A g_B> + |g_A e_B>)/sqrt2,
//   |a> = (|e_A g_B> - |g_A e_B>)/sqrt2, |g> = |g_A g_B>

#pragma once

#include <array>
#include <complex>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace twoatom {

using cplx = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;
using Vector4c = Eigen::Vector4cd;

/// Raised when a state fails Hermiticity, trace or positivity checks.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Eigenvalue more negative than the clamping window allows.
class PositivityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StateTolerances {
    double hermitian = 1e-12;
    double trace = 1e-12;
    double psd = 1e-10;
};

enum class Subsystem { A, B };

struct PureState4 {
    Vector4c amplitudes;
};

class DensityMatrix4 {
public:
    DensityMatrix4() : m_(Matrix4c::Zero()) { m_(3, 3) = 1.0; }

    /// Validates Hermiticity, unit trace and positivity.
    static DensityMatrix4 from_matrix(const Matrix4c& m, const StateTolerances& tol = {});
    static DensityMatrix4 unchecked(const Matrix4c& m) { return DensityMatrix4(m); }

    const Matrix4c& matrix() const { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }

private:
    explicit DensityMatrix4(const Matrix4c& m) : m_(m) {}
    Matrix4c m_;
};

/// X-structured state in the product basis: populations rho11..rho44 and the
/// two coherences rho14 and rho23. Indices below are zero based.
struct XState {
    std::array<double, 4> pop{0.0, 0.0, 0.0, 1.0};
    cplx c14{0.0};
    cplx c23{0.0};

    void validate(double tol = 1e-12) const;
};

/// X-structured state in the collective basis. `as` is <a|rho|s>; the
/// conjugate element rho_sa is implied.
struct CollectiveXState {
    double ee = 0.0;
    double ss = 0.0;
    double aa = 0.0;
    double gg = 1.0;
    cplx as{0.0};
    cplx eg{0.0};

    cplx sa() const { return std::conj(as); }
    void validate(double tol = 1e-12) const;
};

struct BlochForm {
    Eigen::Vector3d sA = Eigen::Vector3d::Zero();
    Eigen::Vector3d sB = Eigen::Vector3d::Zero();
    Eigen::Matrix3d T = Eigen::Matrix3d::Zero();
};

PureState4 make_bell_like(double p);
DensityMatrix4 to_density(const PureState4& psi);
DensityMatrix4 to_density(const XState& x);

/// True when every non-X element has magnitude at most `tol`.
bool is_x_state(const DensityMatrix4& rho, double tol = 1e-12);
/// Extracts the X elements; throws ValidationError if rho is not X-shaped.
XState to_x_state(const DensityMatrix4& rho, double tol = 1e-12);

XState collective_to_product(const CollectiveXState& x);
CollectiveXState product_to_collective(const XState& x);

Matrix2c partial_trace(const DensityMatrix4& rho, Subsystem traced_out);

/// Pauli expectation values; T(i, j) = Tr[rho sigma_i^A (x) sigma_j^B].
BlochForm bloch_decomposition(const DensityMatrix4& rho);
/// Inverse of bloch_decomposition.
Matrix4c from_bloch(const BlochForm& b);

/// Exchanges the roles of the two atoms.
DensityMatrix4 swap_subsystems(const DensityMatrix4& rho);
XState swap_subsystems(const XState& x);

/// Closed-form spectrum of an X state, descending.
std::array<double, 4> eigenvalues_x(const XState& x);
/// Hermitian eigensolver spectrum, descending.
std::array<double, 4> eigenvalues(const DensityMatrix4& rho);

/// Entropy in bits. Eigenvalues in [-1e-10, 0) are clamped to zero; anything
/// more negative throws PositivityError.
double von_neumann_entropy(std::span<const double> spectrum);
double von_neumann_entropy(const Matrix2c& rho);
double binary_entropy(double x);

namespace pauli {
const Matrix2c& identity();
const Matrix2c& x();
const Matrix2c& y();
const Matrix2c& z();
/// sigma_x, sigma_y, sigma_z by index 0..2.
const Matrix2c& by_index(int k);
}  // namespace pauli

/// Kronecker product A (x) B with A as the major index.
Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

}  // namespace twoatom
