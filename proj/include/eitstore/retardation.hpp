#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "eitstore/schedule.hpp"

namespace eitstore {

// Cumulative propagation distance Phi(t) = integral of Omega_c^2(t')/q from
// the table start, by composite trapezoid on a uniform time grid with linear
// interpolation in between. Phi is the argument shift in every closed-form
// solution and the per-step displacement budget of the advection solver.
class RetardationTable {
public:
    RetardationTable(const CouplingSchedule& sch, double q, double t_lo, double t_hi,
                     double dt_sample)
        : t_lo_(t_lo), dt_(dt_sample) {
        validate_schedule(sch);
        if (!(q > 0.0)) throw std::invalid_argument("retardation table needs q > 0");
        if (!(t_hi > t_lo)) throw std::invalid_argument("retardation table needs t_hi > t_lo");
        if (!(dt_sample > 0.0)) throw std::invalid_argument("retardation table needs dt_sample > 0");
        const auto n = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / dt_sample)) + 1;
        phi_.resize(n + 1, 0.0);
        double prev = integrand(sch, q, t_lo);
        for (std::size_t k = 1; k < phi_.size(); ++k) {
            const double cur = integrand(sch, q, t_lo + dt_ * double(k));
            phi_[k] = phi_[k - 1] + 0.5 * dt_ * (prev + cur);
            prev = cur;
        }
    }

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_lo_ + dt_ * double(phi_.size() - 1); }
    double sample_step() const { return dt_; }

    // Phi(t) relative to the table start.
    double phi(double t) const {
        const double s = (t - t_lo_) / dt_;
        if (s < 0.0 || s > double(phi_.size() - 1))
            throw std::invalid_argument("time outside retardation table domain");
        const auto k = std::min(static_cast<std::size_t>(s), phi_.size() - 2);
        const double w = s - double(k);
        // a + w*(b - a) is exact on flat segments, which keeps zero-coupling
        // windows at bit-identical Phi and solver steps there at nu == 0
        return phi_[k] + w * (phi_[k + 1] - phi_[k]);
    }

    // Phi(t1) - Phi(t0), t0 <= t1.
    double distance(double t0, double t1) const {
        if (t0 > t1) throw std::invalid_argument("retardation interval needs t0 <= t1");
        return phi(t1) - phi(t0);
    }

    // Earliest t' in [t, t_limit] with Phi(t') - Phi(t) >= dphi, or t_limit
    // when the budget is not reached. Exact with respect to the stored
    // piecewise-linear Phi, so a solver step sized by it never exceeds the
    // requested displacement.
    double advance_time(double t, double dphi, double t_limit) const {
        if (t_limit < t) throw std::invalid_argument("advance_time needs t_limit >= t");
        const double target = phi(t) + dphi;
        if (phi(t_limit) < target) return t_limit;
        // first sample index with phi >= target
        auto it = std::lower_bound(phi_.begin(), phi_.end(), target);
        double t_hit;
        if (it == phi_.begin()) {
            t_hit = t_lo_;
        } else {
            const auto k = static_cast<std::size_t>(it - phi_.begin()) - 1;
            const double seg = phi_[k + 1] - phi_[k];
            const double w = seg > 0.0 ? (target - phi_[k]) / seg : 1.0;
            t_hit = t_lo_ + dt_ * (double(k) + w);
        }
        return std::clamp(t_hit, t, t_limit);
    }

private:
    static double integrand(const CouplingSchedule& sch, double q, double t) {
        const double w = eval_schedule(sch, t);
        return w * w / q;
    }

    double t_lo_;
    double dt_;
    std::vector<double> phi_; // cumulative, monotone non-decreasing
};

// Naming shim matching the operation vocabulary.
inline double retardation_length(const RetardationTable& tab, double t0, double t1) {
    return tab.distance(t0, t1);
}

} // namespace eitstore
