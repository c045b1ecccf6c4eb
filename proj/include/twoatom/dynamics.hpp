// dynamics.hpp — Collective rates of two atoms in a common vacuum, closed-form
// X-state propagation, and a fixed-step integrator of the full master
// equation used as an independent oracle.
//
// Time is dimensionless (Gamma t) when gamma = 1, the default.

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "twoatom/quantum_state.hpp"

namespace twoatom {

struct CollectiveRates {
    double gamma12 = 0.0;  ///< collective damping, units of Gamma
    double omega12 = 0.0;  ///< dipole-dipole shift, units of Gamma
    /// Omega12 grows like (kr)^-3; set when kr is below 0.05.
    bool omega12_diverging = false;
};

/// Rates for parallel dipoles perpendicular to the interatomic axis.
/// Throws std::domain_error unless kr > 0.
CollectiveRates collective_rates(double kr);

struct CollectiveParams {
    double gamma = 1.0;
    double gamma12 = 0.0;
    double omega12 = 0.0;
    double omega0 = 0.0;
    double kr = 0.0;  ///< 0 when the rates were set by hand

    double gamma_plus() const { return gamma + gamma12; }
    double gamma_minus() const { return gamma - gamma12; }

    /// Throws std::domain_error if |gamma12| > gamma or gamma <= 0.
    void validate() const;

    static CollectiveParams from_kr(double kr);
    /// Distance in units of the transition wavelength; kr = 2 pi r / lambda.
    static CollectiveParams from_distance(double r_over_lambda);
};

class TimeGrid {
public:
    /// Throws std::domain_error unless strictly increasing and starting at >= 0.
    explicit TimeGrid(std::vector<double> t_values);
    /// `steps` evenly spaced points on [0, t_max].
    static TimeGrid uniform(double t_max, int steps);

    const std::vector<double>& values() const { return t_; }
    std::size_t size() const { return t_.size(); }
    double operator[](std::size_t i) const { return t_[i]; }

private:
    std::vector<double> t_;
};

CollectiveXState analytic_propagate(const CollectiveXState& x0, const CollectiveParams& params,
                                    double t);
XState analytic_propagate(const XState& x0, const CollectiveParams& params, double t);

/// Superoperators act on row-major vectorised 4x4 matrices, index 4*i + j.
using Superop = Eigen::Matrix<cplx, 16, 16>;
using VecRho = Eigen::Matrix<cplx, 16, 1>;

VecRho vectorize(const Matrix4c& m);
Matrix4c unvectorize(const VecRho& v);

/// Raising operator S^+ of atom 0 (A) or 1 (B) in the product basis.
Matrix4c raising(int atom);
Matrix4c lowering(int atom);
Matrix4c energy_operator(int atom);  ///< S^z = sigma_z / 2

/// omega0 (S1z + S2z) + Omega12 (S1+ S2- + S2+ S1-)
Matrix4c coherent_hamiltonian(const CollectiveParams& params);
/// -1/2 sum_ij Gamma_ij (rho Si+ Sj- + Si+ Sj- rho - 2 Sj- rho Si+)
Matrix4c apply_dissipator(const CollectiveParams& params, const Matrix4c& rho);

class Liouvillian {
public:
    explicit Liouvillian(const CollectiveParams& params);

    const Superop& matrix() const { return l_; }
    Matrix4c apply(const Matrix4c& rho) const { return unvectorize(l_ * vectorize(rho)); }

private:
    Superop l_;
};

Liouvillian build_liouvillian(const CollectiveParams& params);

/// Classical RK4 on the master equation, taken in the interaction picture of
/// the coherent Hamiltonian so that large omega0 or Omega12 do not limit the
/// step. For a constant generator one RK4 step is a fixed linear map; it is
/// assembled once per step size by running the four stages on each basis
/// element, after which stepping is a matrix product.
class MasterEquationIntegrator {
public:
    MasterEquationIntegrator(const CollectiveParams& params, double dt = 1e-4);

    double dt() const { return dt_; }

    std::vector<DensityMatrix4> integrate(const DensityMatrix4& rho0, const TimeGrid& grid) const;
    /// out[k][n] is state k at grid point n.
    std::vector<std::vector<DensityMatrix4>> integrate(std::span<const DensityMatrix4> rho0,
                                                       const TimeGrid& grid) const;

    /// One RK4 step of size h in the Schroedinger picture, as a 16x16 map on
    /// the eigenbasis-vectorised state.
    Superop step_map(double h) const;

private:
    using Batch = Eigen::Matrix<cplx, 16, Eigen::Dynamic>;

    VecRho to_eigenbasis(const Matrix4c& rho) const;
    Matrix4c from_eigenbasis(const VecRho& v) const;

    double dt_;
    Matrix4c basis_;            // columns: eigenvectors of the coherent Hamiltonian
    Eigen::Matrix<double, 16, 1> bohr_;  // E_k - E_l per vectorised slot
    Superop dissipator_;        // dissipator in the Hamiltonian eigenbasis
    Superop full_step_;
};

std::vector<DensityMatrix4> integrate_master_equation(const DensityMatrix4& rho0,
                                                      const CollectiveParams& params,
                                                      const TimeGrid& grid, double dt = 1e-4);

}  // namespace twoatom
