#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eitstore/advect.hpp"
#include "eitstore/analytic.hpp"
#include "eitstore/errors.hpp"
#include "eitstore/grid.hpp"

namespace eitstore {

namespace detail {

inline void check_state(const Grid2D& g, double t) {
    const double m = max_abs(g);
    if (!std::isfinite(m))
        throw NumericalError("non-finite coherence at t = " + std::to_string(t));
    if (m > 1.0 + 1e-9)
        throw NumericalError("|rho21| exceeded 1 at t = " + std::to_string(t) +
                             "; scenario is outside the weak-probe regime");
}

// Active-stage field on the grid: Omega = -rho21 * Omega_c. With finite c the
// coupling is sampled at the retarded time of each node; the stencil itself
// always runs in retarded coordinates.
inline Grid2D field_from_coherence(const Grid2D& rho, double t, int stage,
                                   const AnalyticSolution& ana) {
    const auto& scn = ana.scenario();
    const auto& sch = stage == 1 ? scn.storing : scn.retrieving;
    Grid2D field = Grid2D::zeros(rho.nx, rho.ny, rho.dx, rho.dy);
    if (stage == 1) {
        std::vector<double> w(static_cast<std::size_t>(rho.nx));
        for (int i = 0; i < rho.nx; ++i) w[std::size_t(i)] = eval_schedule(sch, ana.retarded(t, rho.x(i)));
        for (int j = 0; j < rho.ny; ++j)
            for (int i = 0; i < rho.nx; ++i)
                field.at(i, j) = -rho.at(i, j) * w[std::size_t(i)];
    } else {
        for (int j = 0; j < rho.ny; ++j) {
            const double w = eval_schedule(sch, ana.retarded(t, rho.y(j)));
            for (int i = 0; i < rho.nx; ++i) field.at(i, j) = -rho.at(i, j) * w;
        }
    }
    return field;
}

} // namespace detail

// Finite-difference solution of the reduced transport problem, independent of
// the closed forms except for shared problem data (envelopes, schedules and
// the retardation tables that define boundary and initial values).
//
// Stage 1 advects rho21 along x at the uniform speed Omega_c1^2/q with the
// probe imposed at x = 0; at tau1 the grid is handed over verbatim; stage 2
// advects along y at Omega_c2^2/q with zero inflow. Each step uses the exact
// displacement increment from the retardation table as its Courant number,
// so the CFL bound holds exactly and zero-coupling windows produce identity
// steps.
inline SnapshotSeries run_scenario(const ScenarioConfig& scn, const SolverSpec& spec) {
    validate_scenario(scn);
    validate_solver_spec(spec);
    if (auto diags = validate_regime(scn); !diags.empty() && !scn.acknowledge_diagnostics) {
        std::string msg = "scenario fails validity checks:";
        for (const auto& d : diags) msg += " [" + d.code + "] " + d.message;
        throw RegimeError(msg);
    }
    for (double ts : spec.snapshot_times)
        if (ts < 0.0 || ts > scn.domain.t_max)
            throw std::invalid_argument("snapshot times must lie in [0, t_max]");

    const AnalyticSolution ana(scn);
    const auto& tab1 = ana.storing_table();
    const auto& tab2 = ana.retrieving_table();

    const double dx = scn.domain.x_max / double(spec.nx - 1);
    const double dy = scn.domain.y_max / double(spec.ny - 1);
    Grid2D rho = Grid2D::zeros(spec.nx, spec.ny, dx, dy);

    // initial condition from the stage-1 closed form at t = 0
    for (int j = 0; j < spec.ny; ++j)
        for (int i = 0; i < spec.nx; ++i)
            rho.at(i, j) = ana.coherence(0.0, rho.x(i), rho.y(j));

    // transverse profile at the x = 0 inflow nodes
    std::vector<double> profile_y(static_cast<std::size_t>(spec.ny));
    for (int j = 0; j < spec.ny; ++j) profile_y[std::size_t(j)] = scn.profile(rho.y(j));
    const std::vector<double> zero_inflow(static_cast<std::size_t>(spec.nx), 0.0);

    // event times: snapshots plus the handoff and the end, deduplicated
    std::vector<double> events = spec.snapshot_times;
    events.push_back(scn.tau1);
    events.push_back(scn.domain.t_max);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    SnapshotSeries series;
    series.snaps.reserve(spec.snapshot_times.size());
    auto is_snapshot = [&](double t) {
        return std::binary_search(spec.snapshot_times.begin(), spec.snapshot_times.end(), t);
    };
    auto record = [&](double t, int stage) {
        series.snaps.push_back({t, stage, detail::field_from_coherence(rho, t, stage, ana), rho});
    };

    double t = 0.0;
    if (is_snapshot(0.0)) record(0.0, 1);
    for (double t_event : events) {
        if (t_event <= t) continue;
        const int stage = t_event <= scn.tau1 ? 1 : 2;
        const auto& tab = stage == 1 ? tab1 : tab2;
        const double cell = stage == 1 ? dx : dy;
        const Axis axis = stage == 1 ? Axis::x : Axis::y;
        while (t < t_event) {
            const double t_limit = std::min(t_event, t + spec.dt_cap);
            double t_next = tab.advance_time(t, spec.cfl * cell, t_limit);
            // snap tiny remainders onto the event so loops always terminate
            if (t_limit - t_next < 1e-9 * scn.medium.T_ref) t_next = t_limit;
            // clamp away the odd -1 ulp from interpolation at segment seams
            const double nu = std::max(0.0, tab.distance(t, t_next) / cell);
            if (nu > 1.0)
                throw NumericalError("CFL bound exceeded while stepping");
            if (stage == 1) {
                const double bc = -ana.probe_shape()(-ana.phi1(t_next));
                std::vector<double> inflow(static_cast<std::size_t>(spec.ny));
                for (int j = 0; j < spec.ny; ++j)
                    inflow[std::size_t(j)] = bc * profile_y[std::size_t(j)];
                courant_step(rho, nu, axis, spec.scheme, inflow, spec.threads);
            } else {
                courant_step(rho, nu, axis, spec.scheme, zero_inflow, spec.threads);
            }
            t = t_next;
            detail::check_state(rho, t);
        }
        // the handoff itself is the verbatim grid; snapshots at tau1 are
        // reported as stage 2
        if (is_snapshot(t_event)) record(t_event, t_event < scn.tau1 ? 1 : 2);
    }
    return series;
}

} // namespace eitstore
