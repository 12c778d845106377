#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eitstore/analytic.hpp"
#include "eitstore/grid.hpp"
#include "eitstore/solver.hpp"

namespace eitstore {

struct SnapshotError {
    double t = 0.0;
    int stage = 1;
    double field_l2 = 0.0, field_linf = 0.0;
    double coh_l2 = 0.0, coh_linf = 0.0;
};

// Interchange check at the measurement snapshot: the retrieved field's y-cut
// through its maximum against the shifted transverse profile, and its x-cut
// against the stored probe time shape.
struct InterchangeMetrics {
    double t = 0.0;
    int i_peak = 0, j_peak = 0;
    double ycut_l2 = 0.0;
    double xcut_l2 = 0.0;
};

struct ErrorReport {
    std::vector<SnapshotError> snapshots;
    std::optional<InterchangeMetrics> interchange;
    double worst_field_l2 = 0.0;
    double worst_coh_l2 = 0.0;
};

namespace detail {

// Relative L2/Linf of (num - ana). Snapshots with no analytic content are
// normalized against the largest analytic snapshot of the series so an
// empty-vs-empty comparison reports zero instead of 0/0.
struct GridErr {
    double l2 = 0.0, linf = 0.0, ref_l2 = 0.0, ref_linf = 0.0;
};

inline GridErr grid_error(const Grid2D& num, const Grid2D& ana) {
    if (!num.same_shape(ana)) throw std::invalid_argument("grid shape mismatch");
    GridErr e;
    double s2 = 0.0;
    for (std::size_t k = 0; k < num.v.size(); ++k) {
        const double d = num.v[k] - ana.v[k];
        s2 += d * d;
        e.linf = std::max(e.linf, std::abs(d));
        e.ref_linf = std::max(e.ref_linf, std::abs(ana.v[k]));
    }
    e.l2 = std::sqrt(s2);
    e.ref_l2 = l2_norm(ana);
    return e;
}

inline double safe_ratio(double num, double den, double floor_den) {
    const double d = std::max(den, floor_den);
    return d > 0.0 ? num / d : 0.0;
}

} // namespace detail

// Samples the closed-form solution on the same grid and times a numeric run
// would use. Also the payload of the `analytic` CLI command.
inline SnapshotSeries sample_analytic_series(const ScenarioConfig& scn, const SolverSpec& spec) {
    validate_scenario(scn);
    validate_solver_spec(spec);
    const AnalyticSolution ana(scn);
    const double dx = scn.domain.x_max / double(spec.nx - 1);
    const double dy = scn.domain.y_max / double(spec.ny - 1);
    SnapshotSeries series;
    for (double t : spec.snapshot_times) {
        if (t < 0.0 || t > scn.domain.t_max)
            throw std::invalid_argument("snapshot times must lie in [0, t_max]");
        Snapshot s;
        s.t = t;
        s.stage = t < scn.tau1 ? 1 : 2;
        s.field = Grid2D::zeros(spec.nx, spec.ny, dx, dy);
        s.coherence = Grid2D::zeros(spec.nx, spec.ny, dx, dy);
        for (int j = 0; j < spec.ny; ++j) {
            const double y = s.field.y(j);
            for (int i = 0; i < spec.nx; ++i) {
                const double x = s.field.x(i);
                s.field.at(i, j) = s.stage == 1 ? ana.probe_field(t, x, y) : ana.new_field(t, x, y);
                s.coherence.at(i, j) = ana.coherence(t, x, y);
            }
        }
        series.snaps.push_back(std::move(s));
    }
    return series;
}

// Per-snapshot discrepancy between a numeric series and the closed forms,
// plus the interchange metrics measured at the last stage-2 snapshot with
// significant field content.
inline ErrorReport compare_to_analytic(const SnapshotSeries& series, const ScenarioConfig& scn) {
    validate_scenario(scn);
    const AnalyticSolution ana(scn);
    ErrorReport report;

    // first pass: analytic grids plus series-wide reference scales
    std::vector<Grid2D> ana_field(series.snaps.size());
    std::vector<Grid2D> ana_coh(series.snaps.size());
    double ref_field_l2 = 0.0, ref_coh_l2 = 0.0, ref_field_linf = 0.0, ref_coh_linf = 0.0;
    for (std::size_t k = 0; k < series.snaps.size(); ++k) {
        const auto& s = series.snaps[k];
        if (k > 0 && !(s.t > series.snaps[k - 1].t))
            throw std::invalid_argument("snapshot times must be strictly increasing");
        ana_field[k] = Grid2D::zeros(s.field.nx, s.field.ny, s.field.dx, s.field.dy);
        ana_coh[k] = ana_field[k];
        for (int j = 0; j < s.field.ny; ++j) {
            const double y = s.field.y(j);
            for (int i = 0; i < s.field.nx; ++i) {
                const double x = s.field.x(i);
                ana_field[k].at(i, j) =
                    s.stage == 1 ? ana.probe_field(s.t, x, y) : ana.new_field(s.t, x, y);
                ana_coh[k].at(i, j) = ana.coherence(s.t, x, y);
            }
        }
        ref_field_l2 = std::max(ref_field_l2, l2_norm(ana_field[k]));
        ref_coh_l2 = std::max(ref_coh_l2, l2_norm(ana_coh[k]));
        ref_field_linf = std::max(ref_field_linf, max_abs(ana_field[k]));
        ref_coh_linf = std::max(ref_coh_linf, max_abs(ana_coh[k]));
    }

    for (std::size_t k = 0; k < series.snaps.size(); ++k) {
        const auto& s = series.snaps[k];
        const auto ef = detail::grid_error(s.field, ana_field[k]);
        const auto ec = detail::grid_error(s.coherence, ana_coh[k]);
        SnapshotError e;
        e.t = s.t;
        e.stage = s.stage;
        e.field_l2 = detail::safe_ratio(ef.l2, ef.ref_l2, 1e-9 * ref_field_l2);
        e.field_linf = detail::safe_ratio(ef.linf, ef.ref_linf, 1e-9 * ref_field_linf);
        e.coh_l2 = detail::safe_ratio(ec.l2, ec.ref_l2, 1e-9 * ref_coh_l2);
        e.coh_linf = detail::safe_ratio(ec.linf, ec.ref_linf, 1e-9 * ref_coh_linf);
        report.worst_field_l2 = std::max(report.worst_field_l2, e.field_l2);
        report.worst_coh_l2 = std::max(report.worst_coh_l2, e.coh_l2);
        report.snapshots.push_back(e);
    }

    // measurement snapshot: last stage-2 snapshot carrying at least 10% of
    // the strongest stage-2 field
    double stage2_peak = 0.0;
    for (std::size_t k = 0; k < series.snaps.size(); ++k)
        if (series.snaps[k].stage == 2) stage2_peak = std::max(stage2_peak, max_abs(series.snaps[k].field));
    for (std::size_t k = series.snaps.size(); k-- > 0;) {
        const auto& s = series.snaps[k];
        if (s.stage != 2 || max_abs(s.field) < 0.1 * stage2_peak) continue;
        InterchangeMetrics m;
        m.t = s.t;
        double best = -1.0;
        for (int j = 0; j < s.field.ny; ++j)
            for (int i = 0; i < s.field.nx; ++i)
                if (std::abs(s.field.at(i, j)) > best) {
                    best = std::abs(s.field.at(i, j));
                    m.i_peak = i;
                    m.j_peak = j;
                }
        double dy2 = 0.0, ry2 = 0.0;
        for (int j = 0; j < s.field.ny; ++j) {
            const double a = ana_field[k].at(m.i_peak, j);
            const double d = s.field.at(m.i_peak, j) - a;
            dy2 += d * d;
            ry2 += a * a;
        }
        double dx2 = 0.0, rx2 = 0.0;
        for (int i = 0; i < s.field.nx; ++i) {
            const double a = ana_field[k].at(i, m.j_peak);
            const double d = s.field.at(i, m.j_peak) - a;
            dx2 += d * d;
            rx2 += a * a;
        }
        m.ycut_l2 = ry2 > 0.0 ? std::sqrt(dy2 / ry2) : 0.0;
        m.xcut_l2 = rx2 > 0.0 ? std::sqrt(dx2 / rx2) : 0.0;
        report.interchange = m;
        break;
    }
    return report;
}

} // namespace eitstore
