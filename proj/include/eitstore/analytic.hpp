#pragma once

#include <cmath>
#include <utility>

#include "eitstore/retardation.hpp"
#include "eitstore/scenario.hpp"

namespace eitstore {

// Closed-form solutions of the reduced propagation problem for one scenario:
// stage-1 probe transport along x under the storing coupling, frozen storage
// across the coupling-free window, and stage-2 readout along y under the
// retrieving coupling. All arguments are shifted by the accumulated
// retardation length, so evaluation reduces to envelope lookups plus two
// cached quadrature tables.
class AnalyticSolution {
public:
    explicit AnalyticSolution(ScenarioConfig scn)
        : scn_(std::move(scn)),
          f_(scn_.probe_shape()),
          tab1_(make_table(scn_, scn_.storing)),
          tab2_(make_table(scn_, scn_.retrieving)) {
        phi1_at_zero_ = tab1_.phi(0.0);
        phi2_at_tau1_ = tab2_.phi(scn_.tau1);
    }

    const ScenarioConfig& scenario() const { return scn_; }
    const Envelope& probe_shape() const { return f_; }
    const RetardationTable& storing_table() const { return tab1_; }
    const RetardationTable& retrieving_table() const { return tab2_; }

    // Phi_1(t): storing retardation accumulated since t = 0 (signed).
    double phi1(double t) const { return tab1_.phi(t) - phi1_at_zero_; }

    // Phi_2(t): retrieving retardation accumulated since tau1; zero before.
    double phi2(double t) const {
        return t <= scn_.tau1 ? 0.0 : tab2_.phi(t) - phi2_at_tau1_;
    }

    // Retarded time t - pos/c; plain t when c is infinite.
    double retarded(double t, double pos) const {
        return scn_.medium.finite_c() ? t - pos / scn_.medium.c : t;
    }

    // Position shift frozen into the medium at handoff, as seen at depth x.
    double stored_shift(double x) const { return phi1(retarded(scn_.tau1, x)); }

    // Stage-1 probe field Omega_p(t, x, y).
    double probe_field(double t, double x, double y) const {
        const double tr = retarded(t, x);
        const double w1 = eval_schedule(scn_.storing, tr);
        if (w1 == 0.0) return 0.0;
        return w1 * f_(x - phi1(tr)) * scn_.profile(y);
    }

    // Ground-state coherence rho21(t, x, y); real and non-positive for
    // non-negative envelopes. Stage switches at lab time tau1; both stages
    // give the same value there, which is the handoff condition.
    double coherence(double t, double x, double y) const {
        if (t < scn_.tau1)
            return -f_(x - phi1(retarded(t, x))) * scn_.profile(y);
        return -scn_.profile(y - phi2(retarded(t, y))) * f_(x - stored_shift(x));
    }

    // Stage-2 retrieved field Omega_n(t, x, y); identically zero before tau1.
    double new_field(double t, double x, double y) const {
        const double tr = retarded(t, y);
        const double w2 = eval_schedule(scn_.retrieving, tr);
        if (w2 == 0.0) return 0.0;
        return w2 * scn_.profile(y - phi2(tr)) * f_(x - stored_shift(x));
    }

    // Shapes of the retrieved field: its time shape is the probe's
    // transverse profile unchanged, its transverse profile is the stored
    // probe time shape. With infinite c the second map is a rigid shift;
    // with finite c it is sampled on a uniform grid of the given step.
    std::pair<Envelope, Envelope> interchange_map(double sample_step = 0.0) const {
        Envelope g = scn_.profile;
        if (!scn_.medium.finite_c())
            return {g, f_.shifted(phi1(scn_.tau1))};
        const double step = sample_step > 0.0 ? sample_step : scn_.domain.x_max / 4096.0;
        const auto n = static_cast<std::size_t>(std::floor(scn_.domain.x_max / step)) + 1;
        std::vector<double> values(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double x = step * double(k);
            values[k] = f_(x - stored_shift(x));
        }
        return {g, Envelope::sampled(0.0, step, std::move(values))};
    }

private:
    static RetardationTable make_table(const ScenarioConfig& scn, const CouplingSchedule& sch) {
        validate_scenario(scn);
        double t_lo = 0.0;
        if (scn.medium.finite_c())
            t_lo = -std::max(scn.domain.x_max, scn.domain.y_max) / scn.medium.c;
        const double t_hi = scn.domain.t_max + 1.0;
        return RetardationTable(sch, scn.medium.q_p, t_lo, t_hi, scn.medium.T_ref / 200.0);
    }

    ScenarioConfig scn_;
    Envelope f_;
    RetardationTable tab1_;
    RetardationTable tab2_;
    double phi1_at_zero_ = 0.0;
    double phi2_at_tau1_ = 0.0;
};

} // namespace eitstore
