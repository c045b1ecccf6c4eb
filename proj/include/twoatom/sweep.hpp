// sweep.hpp — Trajectories and (p, t) surfaces for the initial family
// sqrt(p)|e_A e_B> + sqrt(1-p)|g_A g_B>, plus entanglement event detection.

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "twoatom/dynamics.hpp"
#include "twoatom/measures.hpp"

namespace twoatom {

struct TrajectoryRow {
    double t = 0.0;
    MeasureSet measures;
    XState state;
};

struct Trajectory {
    TimeGrid grid{{0.0}};
    std::vector<TrajectoryRow> rows;
    CollectiveParams params;
    double p = 0.0;
};

struct Surface {
    std::vector<double> p_values;
    TimeGrid grid{{0.0}};
    Measure measure = Measure::Concurrence;
    Eigen::MatrixXd values;  ///< rows: p index, columns: t index
};

struct EventReport {
    std::vector<double> death_times;
    std::vector<double> birth_times;
    std::vector<std::pair<double, double>> zero_intervals;
};

enum class ExtremumKind { Maximum, Minimum };

struct Extremum {
    double t = 0.0;
    double value = 0.0;
    ExtremumKind kind = ExtremumKind::Maximum;
    std::size_t index = 0;
};

/// Initial state of the family as an X state.
XState bell_like_x(double p);

/// X state of the family at time t.
XState evolve_bell_like(double p, const CollectiveParams& params, double t);

Trajectory trajectory(double p, const CollectiveParams& params, const TimeGrid& grid);

Surface surface(Measure measure, const std::vector<double>& p_values,
                const CollectiveParams& params, const TimeGrid& grid);

/// Concurrence transitions across zero_tol, each refined by bisection on the
/// closed-form propagator to a bracket of `refine_width`.
EventReport detect_events(const Trajectory& traj, double zero_tol = 1e-9,
                          double refine_width = 1e-6);

/// Strict interior local extrema of one measure along a trajectory. Plateaus
/// (equal neighbours) are skipped.
std::vector<Extremum> local_extrema(const Trajectory& traj, Measure measure);

}  // namespace twoatom
