// measures.hpp — Concurrence, entropic discord, geometric discord and its
// observable lower bound. Each has a closed form for X states and a general
// route that serves as its oracle.
//
// Discord-type quantities use a von Neumann measurement on subsystem B unless
// `side` says otherwise; side A is handled by swapping the atoms.

#pragma once

#include <optional>
#include <stdexcept>

#include "twoatom/quantum_state.hpp"

namespace twoatom {

/// A computed quantity failed an internal sanity bound (e.g. a radicand that
/// is negative beyond roundoff).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Measure { Concurrence, Discord, GeometricDiscord, ObservableBound };

struct MeasureSet {
    double concurrence = 0.0;
    double discord = 0.0;
    double geometric_discord = 0.0;
    double observable_bound = 0.0;

    double get(Measure m) const;
};

struct MeasurementDirection {
    double theta = 0.0;  ///< [0, pi]
    double phi = 0.0;    ///< [0, 2 pi)

    Eigen::Vector3d unit_vector() const;
};

double concurrence_x(const XState& x);
/// Wootters construction through the singular values of sqrt(rho) Y sqrt(rho)^*.
double concurrence_general(const DensityMatrix4& rho);

/// Closed-form X-state discord with measurement on B.
double discord_ali(const XState& x);

struct DiscordSearchOptions {
    int theta_points = 121;
    int phi_points = 241;
    double refine_tol = 1e-7;  ///< final angular bracket width
    int threads = 1;
};

struct DiscordSearchResult {
    double value = 0.0;
    MeasurementDirection direction;
    double conditional_entropy = 0.0;  ///< minimised sum_b p_b S(rho_A|b)
};

/// Average entropy of A after measuring n.sigma on B.
double measured_conditional_entropy(const BlochForm& b, const Eigen::Vector3d& n);

/// Direct minimisation over projective measurements on B: coarse (theta, phi)
/// grid, alternating golden-section refinement, then a Newton polish in the
/// tangent plane of the best direction. The grid reduction uses a
/// lexicographic (theta, phi) tie-break, so the result does not depend on the
/// thread count.
DiscordSearchResult discord_bruteforce(const DensityMatrix4& rho,
                                       const DiscordSearchOptions& opts = {});

double geometric_discord(const DensityMatrix4& rho);
double geometric_discord_x(const XState& x);
double observable_bound(const DensityMatrix4& rho);

/// K = s^B (s^B)^t + T^t T.
Eigen::Matrix3d correlation_k(const BlochForm& b);

struct MeasureOptions {
    Subsystem measured = Subsystem::B;
    bool oracle_check = false;
    double x_tolerance = 1e-12;
    DiscordSearchOptions discord_search{};
};

struct MeasureReport {
    MeasureSet values;
    bool used_x_path = false;
    /// Largest |fast - oracle| across the measures, when oracle_check is set.
    std::optional<double> max_oracle_deviation;
};

MeasureReport measure_all(const DensityMatrix4& rho, const MeasureOptions& opts = {});
/// X-state entry point that skips the structure test.
MeasureSet measure_x(const XState& x, Subsystem measured = Subsystem::B);

}  // namespace twoatom
