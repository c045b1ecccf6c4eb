#include "twoatom/sweep.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace twoatom {

XState bell_like_x(double p) {
    // Same amplitudes as make_bell_like, without the outer product.
    const PureState4 psi = make_bell_like(p);
    XState x;
    x.pop = {p, 0.0, 0.0, 1.0 - p};
    x.c14 = psi.amplitudes(0) * std::conj(psi.amplitudes(3));
    return x;
}

XState evolve_bell_like(double p, const CollectiveParams& params, double t) {
    return analytic_propagate(bell_like_x(p), params, t);
}

Trajectory trajectory(double p, const CollectiveParams& params, const TimeGrid& grid) {
    params.validate();
    Trajectory traj;
    traj.grid = grid;
    traj.params = params;
    traj.p = p;
    traj.rows.reserve(grid.size());
    const XState x0 = bell_like_x(p);
    for (double t : grid.values()) {
        TrajectoryRow row;
        row.t = t;
        row.state = analytic_propagate(x0, params, t);
        row.measures = measure_x(row.state);
        traj.rows.push_back(row);
    }
    return traj;
}

Surface surface(Measure measure, const std::vector<double>& p_values,
                const CollectiveParams& params, const TimeGrid& grid) {
    for (std::size_t i = 1; i < p_values.size(); ++i)
        if (!(p_values[i] > p_values[i - 1]))
            throw std::domain_error("surface: p values must be strictly increasing");
    Surface s;
    s.p_values = p_values;
    s.grid = grid;
    s.measure = measure;
    s.values.resize(static_cast<Eigen::Index>(p_values.size()), static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        const Trajectory traj = trajectory(p_values[i], params, grid);
        for (std::size_t n = 0; n < grid.size(); ++n)
            s.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n)) =
                traj.rows[n].measures.get(measure);
    }
    return s;
}

EventReport detect_events(const Trajectory& traj, double zero_tol, double refine_width) {
    EventReport report;
    if (traj.rows.size() < 2) return report;

    auto concurrence_at = [&](double t) {
        return concurrence_x(evolve_bell_like(traj.p, traj.params, t));
    };
    auto is_zero = [&](double c) { return c <= zero_tol; };

    std::optional<double> zero_start;
    if (is_zero(traj.rows.front().measures.concurrence)) zero_start = traj.rows.front().t;

    for (std::size_t n = 1; n < traj.rows.size(); ++n) {
        const bool before = is_zero(traj.rows[n - 1].measures.concurrence);
        const bool after = is_zero(traj.rows[n].measures.concurrence);
        if (before == after) continue;

        double lo = traj.rows[n - 1].t;
        double hi = traj.rows[n].t;
        while (hi - lo > refine_width) {
            const double mid = 0.5 * (lo + hi);
            if (is_zero(concurrence_at(mid)) == before)
                lo = mid;
            else
                hi = mid;
        }
        const double t_event = 0.5 * (lo + hi);
        if (!before) {
            report.death_times.push_back(t_event);
            zero_start = t_event;
        } else {
            report.birth_times.push_back(t_event);
            report.zero_intervals.emplace_back(zero_start.value_or(traj.rows.front().t), t_event);
            zero_start.reset();
        }
    }
    if (zero_start) report.zero_intervals.emplace_back(*zero_start, traj.rows.back().t);
    return report;
}

std::vector<Extremum> local_extrema(const Trajectory& traj, Measure measure) {
    std::vector<Extremum> out;
    const auto& rows = traj.rows;
    for (std::size_t n = 1; n + 1 < rows.size(); ++n) {
        const double prev = rows[n - 1].measures.get(measure);
        const double cur = rows[n].measures.get(measure);
        const double next = rows[n + 1].measures.get(measure);
        if (cur > prev && cur > next)
            out.push_back({rows[n].t, cur, ExtremumKind::Maximum, n});
        else if (cur < prev && cur < next)
            out.push_back({rows[n].t, cur, ExtremumKind::Minimum, n});
    }
    return out;
}

}  // namespace twoatom
