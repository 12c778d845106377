#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "eitstore/bloch.hpp"
#include "eitstore/compare.hpp"
#include "eitstore/config.hpp"
#include "eitstore/medium.hpp"
#include "eitstore/snapshot_io.hpp"
#include "eitstore/solver.hpp"

namespace eitstore {

namespace detail {

struct OutputContext {
    std::filesystem::path dir;
    bool binary = false;
    double x0_cm = 0.0;
    double T_s = 0.0;
    std::vector<std::string> files;
};

inline OutputContext make_output_context(const ParsedConfig& cfg) {
    OutputContext ctx;
    ctx.dir = cfg.output.dir;
    ctx.binary = cfg.output.binary;
    std::filesystem::create_directories(ctx.dir);
    if (!cfg.output.medium_preset.empty() && cfg.output.T_seconds > 0.0) {
        const AtomPreset preset = load_atom_preset(cfg.output.medium_preset);
        ctx.x0_cm = characteristic_length(coupling_constant(preset), cfg.output.T_seconds);
        ctx.T_s = cfg.output.T_seconds;
    }
    return ctx;
}

inline void emit_grid(OutputContext& ctx, const Grid2D& g, SnapshotMeta meta,
                      const std::string& stem) {
    meta.nx = g.nx;
    meta.ny = g.ny;
    meta.dx = g.dx;
    meta.dy = g.dy;
    meta.x0_cm = ctx.x0_cm;
    meta.T_s = ctx.T_s;
    const std::string name = stem + (ctx.binary ? ".bin" : ".txt");
    std::ofstream os(ctx.dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + name);
    if (ctx.binary)
        write_snapshot_binary(os, g, meta);
    else
        write_snapshot(os, g, meta);
    ctx.files.push_back(name);
}

// Emits probe field, new field and coherence for every snapshot. The
// inactive stage's field is identically zero because its coupling is zero
// outside its own stage.
inline void emit_series(OutputContext& ctx, const SnapshotSeries& series,
                        const std::string& source) {
    for (std::size_t k = 0; k < series.snaps.size(); ++k) {
        const auto& s = series.snaps[k];
        char stem[64];
        const Grid2D zeros = Grid2D::zeros(s.field.nx, s.field.ny, s.field.dx, s.field.dy);
        SnapshotMeta meta;
        meta.stage = s.stage;
        meta.t = s.t;
        meta.source = source;

        meta.quantity = "probe_field";
        std::snprintf(stem, sizeof stem, "snap_%02zu_probe_field", k);
        emit_grid(ctx, s.stage == 1 ? s.field : zeros, meta, stem);

        meta.quantity = "new_field";
        std::snprintf(stem, sizeof stem, "snap_%02zu_new_field", k);
        emit_grid(ctx, s.stage == 2 ? s.field : zeros, meta, stem);

        meta.quantity = "coherence";
        std::snprintf(stem, sizeof stem, "snap_%02zu_coherence", k);
        emit_grid(ctx, s.coherence, meta, stem);
    }
}

inline void write_metrics(OutputContext& ctx, const ErrorReport& report) {
    std::ofstream os(ctx.dir / "metrics.txt", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write metrics.txt");
    for (std::size_t k = 0; k < report.snapshots.size(); ++k) {
        const auto& e = report.snapshots[k];
        os << "snapshot." << k << ".t = " << fmt(e.t) << "\n";
        os << "snapshot." << k << ".stage = " << e.stage << "\n";
        os << "snapshot." << k << ".field_l2 = " << fmt(e.field_l2) << "\n";
        os << "snapshot." << k << ".field_linf = " << fmt(e.field_linf) << "\n";
        os << "snapshot." << k << ".coherence_l2 = " << fmt(e.coh_l2) << "\n";
        os << "snapshot." << k << ".coherence_linf = " << fmt(e.coh_linf) << "\n";
    }
    os << "worst.field_l2 = " << fmt(report.worst_field_l2) << "\n";
    os << "worst.coherence_l2 = " << fmt(report.worst_coh_l2) << "\n";
    if (report.interchange) {
        const auto& m = *report.interchange;
        os << "interchange.t = " << fmt(m.t) << "\n";
        os << "interchange.ycut_l2 = " << fmt(m.ycut_l2) << "\n";
        os << "interchange.xcut_l2 = " << fmt(m.xcut_l2) << "\n";
    }
    ctx.files.push_back("metrics.txt");
}

} // namespace detail

// simulate: run the finite-difference scenario and write snapshot grids plus
// the run manifest; with verify also write comparison metrics.
inline int cmd_simulate(const ParsedConfig& cfg, bool verify, std::ostream& log) {
    const SnapshotSeries series = run_scenario(cfg.scenario, cfg.solver);
    auto ctx = detail::make_output_context(cfg);
    detail::emit_series(ctx, series, "numeric");
    if (verify) {
        const ErrorReport report = compare_to_analytic(series, cfg.scenario);
        detail::write_metrics(ctx, report);
        log << "worst field L2 " << report.worst_field_l2 << ", worst coherence L2 "
            << report.worst_coh_l2 << "\n";
    }
    write_manifest(ctx.dir, print_config(cfg), ctx.files);
    log << "wrote " << ctx.files.size() << " files + manifest to " << ctx.dir.string() << "\n";
    return exit_ok;
}

// analytic: same outputs sampled from the closed forms instead of the solver.
inline int cmd_analytic(const ParsedConfig& cfg, std::ostream& log) {
    const SnapshotSeries series = sample_analytic_series(cfg.scenario, cfg.solver);
    auto ctx = detail::make_output_context(cfg);
    detail::emit_series(ctx, series, "analytic");
    write_manifest(ctx.dir, print_config(cfg), ctx.files);
    log << "wrote " << ctx.files.size() << " files + manifest to " << ctx.dir.string() << "\n";
    return exit_ok;
}

// verify: numeric run checked against the closed forms; nonzero exit when
// any snapshot or interchange error exceeds the tolerance.
inline int cmd_verify(const ParsedConfig& cfg, double tolerance, std::ostream& log) {
    const SnapshotSeries series = run_scenario(cfg.scenario, cfg.solver);
    const ErrorReport report = compare_to_analytic(series, cfg.scenario);
    bool pass = true;
    log << std::left;
    for (const auto& e : report.snapshots) {
        log << "t = " << std::setw(8) << e.t << " stage " << e.stage << "  field L2 "
            << std::setw(12) << e.field_l2 << " coherence L2 " << std::setw(12) << e.coh_l2
            << "\n";
        pass = pass && e.field_l2 < tolerance && e.coh_l2 < tolerance;
    }
    if (report.interchange) {
        log << "interchange at t = " << report.interchange->t << ": ycut L2 "
            << report.interchange->ycut_l2 << ", xcut L2 " << report.interchange->xcut_l2 << "\n";
        pass = pass && report.interchange->ycut_l2 < tolerance &&
               report.interchange->xcut_l2 < tolerance;
    } else {
        log << "no retrieval snapshot with significant field; interchange not measured\n";
        pass = false;
    }
    log << (pass ? "verify: PASS" : "verify: FAIL") << " (tolerance " << tolerance << ")\n";
    return pass ? exit_ok : exit_numeric;
}

// oracle: integrate the single-atom density matrix under the configured
// drives and report adiabatic-reduction residuals; nonzero exit when a
// residual exceeds its threshold.
inline int cmd_oracle(const ParsedConfig& cfg, std::ostream& log) {
    const OracleSpec& o = cfg.oracle;
    const Envelope probe = Envelope::gaussian_sum(o.probe_terms);
    DriveHistory drv;
    drv.omega_p = [probe](double t) { return probe(t); };
    drv.omega_c = [&o](double t) {
        (void)t;
        return o.omega_c;
    };
    drv.delta = o.delta;
    drv.gamma3 = o.gamma3;
    drv.gamma21 = o.gamma21;

    const auto traj = integrate_bloch(drv, DensityMatrix3::ground(), o.dt, o.t_end);
    const auto res = adiabatic_residual(traj, drv, 0.0, o.t_end);

    auto row = [&log](const char* name, const ResidualStat& st) {
        log << "  " << std::left << std::setw(22) << name << " max " << std::setw(14) << st.max
            << " rms " << st.rms << "\n";
    };
    log << "adiabatic residuals over " << res.samples << " samples (normalization "
        << res.normalization << "):\n";
    row("rho21 + Op/Oc", res.r21);
    row("rho31 + i d/dt /Oc", res.r31);
    row("|rho22|", res.pop22);
    row("|rho33|", res.pop33);
    row("|rho32|", res.coh32);
    const bool pass = res.r21.max <= o.r21_max && res.pop33.max <= o.pop33_max;
    log << (pass ? "oracle: PASS" : "oracle: FAIL") << " (r21 <= " << o.r21_max
        << ", pop33 <= " << o.pop33_max << ")\n";
    return pass ? exit_ok : exit_regime;
}

} // namespace eitstore
