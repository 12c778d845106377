#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "eitstore/errors.hpp"

namespace eitstore {

using complexd = std::complex<double>;

// 3x3 density matrix for the single-atom Lambda system; basis order
// |1>, |2> (metastable lower states), |3> (excited).
struct DensityMatrix3 {
    std::array<complexd, 9> m{};

    complexd& operator()(int i, int j) { return m[std::size_t(3 * i + j)]; }
    const complexd& operator()(int i, int j) const { return m[std::size_t(3 * i + j)]; }

    static DensityMatrix3 ground() {
        DensityMatrix3 r;
        r(0, 0) = 1.0;
        return r;
    }

    static DensityMatrix3 pure(const std::array<complexd, 3>& psi) {
        DensityMatrix3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = psi[std::size_t(i)] * std::conj(psi[std::size_t(j)]);
        return r;
    }

    complexd trace() const { return m[0] + m[4] + m[8]; }

    double hermiticity_defect() const {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return d;
    }

    double purity() const {
        double s = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s += std::real((*this)(i, j) * (*this)(j, i));
        return s;
    }
};

inline DensityMatrix3 operator+(DensityMatrix3 a, const DensityMatrix3& b) {
    for (std::size_t k = 0; k < 9; ++k) a.m[k] += b.m[k];
    return a;
}

inline DensityMatrix3 operator*(double s, DensityMatrix3 a) {
    for (auto& e : a.m) e *= s;
    return a;
}

// Eigenvalues of a Hermitian 3x3 matrix by the trigonometric closed form,
// ascending order.
inline std::array<double, 3> eigenvalues_hermitian3(const DensityMatrix3& a) {
    const double q = std::real(a.trace()) / 3.0;
    DensityMatrix3 b = a;
    for (int i = 0; i < 3; ++i) b(i, i) -= q;
    double p2 = 0.0;
    for (const auto& e : b.m) p2 += std::norm(e);
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-300) return {q, q, q};
    // det(b / p), real for Hermitian input
    const auto det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                     b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                     b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    const double r = std::clamp(std::real(det) / (2.0 * p * p * p), -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e0 = q + 2.0 * p * std::cos(phi);
    const double e2 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e1 = 3.0 * q - e0 - e2;
    std::array<double, 3> ev{e2, e1, e0};
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Drives and phenomenological rates for the single-atom oracle. gamma3 is
// the total decay rate out of |3> (branched equally into |1> and |2>),
// gamma21 an extra dephasing of the ground coherence.
struct DriveHistory {
    std::function<double(double)> omega_p; // 1/T
    std::function<double(double)> omega_c; // 1/T
    double delta = 0.0;
    double gamma3 = 0.0;
    double gamma21 = 0.0;
};

// Right-hand side of the Bloch equation: -i[H, rho] with
// H = delta|3><3| - omega_p(|3><1| + h.c.) - omega_c(|3><2| + h.c.),
// plus the relaxation channels above. Trace-free by construction.
inline DensityMatrix3 bloch_rhs(const DensityMatrix3& rho, double omega_p, double omega_c,
                                double delta, double gamma3, double gamma21) {
    std::array<std::array<complexd, 3>, 3> h{};
    h[0][2] = -omega_p;
    h[2][0] = -omega_p;
    h[1][2] = -omega_c;
    h[2][1] = -omega_c;
    h[2][2] = delta;

    DensityMatrix3 d;
    const complexd minus_i(0.0, -1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            complexd hr = 0.0, rh = 0.0;
            for (int k = 0; k < 3; ++k) {
                hr += h[std::size_t(i)][std::size_t(k)] * rho(k, j);
                rh += rho(i, k) * h[std::size_t(k)][std::size_t(j)];
            }
            d(i, j) = minus_i * (hr - rh);
        }

    const complexd p33 = rho(2, 2);
    d(0, 0) += 0.5 * gamma3 * p33;
    d(1, 1) += 0.5 * gamma3 * p33;
    d(2, 2) -= gamma3 * p33;
    d(2, 0) -= 0.5 * gamma3 * rho(2, 0);
    d(0, 2) -= 0.5 * gamma3 * rho(0, 2);
    d(2, 1) -= 0.5 * gamma3 * rho(2, 1);
    d(1, 2) -= 0.5 * gamma3 * rho(1, 2);
    d(1, 0) -= gamma21 * rho(1, 0);
    d(0, 1) -= gamma21 * rho(0, 1);
    return d;
}

struct BlochTrajectory {
    std::vector<double> t;
    std::vector<DensityMatrix3> rho;
};

// Classical fixed-step RK4 over [0, t_end]. dt is trimmed to divide t_end
// evenly; the requested dt must satisfy dt <= 1e-2 / max(|drives|, |delta|,
// rates). Invariants (hermiticity, unit trace, positivity) are checked along
// the way and a breach raises NumericalError.
inline BlochTrajectory integrate_bloch(const DriveHistory& drv, const DensityMatrix3& rho0,
                                       double dt, double t_end, int record_stride = 1) {
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("integrate_bloch needs dt > 0 and t_end > 0");
    if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");

    double scale = std::max(std::abs(drv.delta), std::max(drv.gamma3, drv.gamma21));
    for (int k = 0; k <= 2048; ++k) {
        const double t = t_end * double(k) / 2048.0;
        scale = std::max({scale, std::abs(drv.omega_p(t)), std::abs(drv.omega_c(t))});
    }
    if (scale > 0.0 && dt > 1e-2 / scale)
        throw std::invalid_argument("dt too coarse: need dt <= 1e-2 / max drive scale");

    const auto nsteps = static_cast<long>(std::llround(std::ceil(t_end / dt - 1e-12)));
    const double h = t_end / double(nsteps);

    auto rhs = [&](const DensityMatrix3& r, double t) {
        return bloch_rhs(r, drv.omega_p(t), drv.omega_c(t), drv.delta, drv.gamma3, drv.gamma21);
    };

    BlochTrajectory traj;
    traj.t.reserve(std::size_t(nsteps / record_stride) + 2);
    DensityMatrix3 rho = rho0;
    traj.t.push_back(0.0);
    traj.rho.push_back(rho);
    for (long n = 0; n < nsteps; ++n) {
        const double t = h * double(n);
        const auto k1 = rhs(rho, t);
        const auto k2 = rhs(rho + 0.5 * h * k1, t + 0.5 * h);
        const auto k3 = rhs(rho + 0.5 * h * k2, t + 0.5 * h);
        const auto k4 = rhs(rho + h * k3, t + h);
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (rho.hermiticity_defect() > 1e-12)
            throw NumericalError("integration unstable: hermiticity lost");
        if (std::abs(rho.trace() - 1.0) > 1e-10)
            throw NumericalError("integration unstable: trace drifted");
        if (eigenvalues_hermitian3(rho)[0] < -1e-8)
            throw NumericalError("integration unstable: negative population");

        if ((n + 1) % record_stride == 0 || n + 1 == nsteps) {
            traj.t.push_back(h * double(n + 1));
            traj.rho.push_back(rho);
        }
    }
    return traj;
}

struct ResidualStat {
    double max = 0.0;
    double rms = 0.0;
};

// Residuals of the adiabatic reduction over an evaluation window, each
// normalized by the largest dark-state amplitude |omega_p/omega_c| seen
// there (or by 1 when the probe is off).
struct AdiabaticResiduals {
    ResidualStat r21;   // rho21 + omega_p/omega_c
    ResidualStat r31;   // rho31 + (i/omega_c) d(rho21)/dt
    ResidualStat pop22; // |rho22|
    ResidualStat pop33; // |rho33|
    ResidualStat coh32; // |rho32|
    double normalization = 1.0;
    std::size_t samples = 0;
};

inline AdiabaticResiduals adiabatic_residual(const BlochTrajectory& traj, const DriveHistory& drv,
                                             double window_t0, double window_t1,
                                             double omega_c_floor_rel = 0.1) {
    if (traj.t.size() < 3) throw std::invalid_argument("trajectory too short");
    if (!(window_t1 > window_t0)) throw std::invalid_argument("empty evaluation window");

    std::vector<std::size_t> idx;
    double wc_max = 0.0, wp_max = 0.0;
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        if (traj.t[k] < window_t0 || traj.t[k] > window_t1) continue;
        idx.push_back(k);
        wc_max = std::max(wc_max, std::abs(drv.omega_c(traj.t[k])));
        wp_max = std::max(wp_max, std::abs(drv.omega_p(traj.t[k])));
    }
    if (idx.size() < 3) throw std::invalid_argument("window covers fewer than 3 samples");

    AdiabaticResiduals out;
    out.samples = idx.size();
    if (wc_max == 0.0) {
        if (wp_max == 0.0) return out; // no drives, nothing to reduce
        throw std::invalid_argument("coupling is zero on the evaluation window");
    }

    double s_max = 0.0;
    for (auto k : idx) {
        const double wc = std::abs(drv.omega_c(traj.t[k]));
        if (wc < omega_c_floor_rel * wc_max)
            throw std::invalid_argument("coupling dips below the window floor");
        s_max = std::max(s_max, std::abs(drv.omega_p(traj.t[k])) / wc);
    }
    out.normalization = s_max > 0.0 ? s_max : 1.0;

    auto accumulate = [&](ResidualStat& st, double v) {
        st.max = std::max(st.max, v);
        st.rms += v * v;
    };
    std::size_t used = 0;
    for (auto k : idx) {
        if (k == 0 || k + 1 >= traj.t.size()) continue; // centered derivative needs neighbors
        const double t = traj.t[k];
        const double wp = drv.omega_p(t);
        const double wc = drv.omega_c(t);
        const auto& r = traj.rho[k];
        const complexd drho21 =
            (traj.rho[k + 1](1, 0) - traj.rho[k - 1](1, 0)) / (traj.t[k + 1] - traj.t[k - 1]);
        accumulate(out.r21, std::abs(r(1, 0) + wp / wc));
        accumulate(out.r31, std::abs(r(2, 0) + complexd(0.0, 1.0) * drho21 / wc));
        accumulate(out.pop22, std::abs(r(1, 1)));
        accumulate(out.pop33, std::abs(r(2, 2)));
        accumulate(out.coh32, std::abs(r(2, 1)));
        ++used;
    }
    if (used == 0) throw std::invalid_argument("window has no interior samples");
    for (auto* st : {&out.r21, &out.r31, &out.pop22, &out.pop33, &out.coh32}) {
        st->rms = std::sqrt(st->rms / double(used)) / out.normalization;
        st->max /= out.normalization;
    }
    return out;
}

} // namespace eitstore
