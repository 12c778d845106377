#pragma once

#include <cmath>
#include <thread>
#include <vector>

#include "eitstore/errors.hpp"
#include "eitstore/grid.hpp"

namespace eitstore {

namespace detail {

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker. Chunk boundaries depend only on n and threads, and no two chunks
// touch the same lines, so results are bit-identical for any thread count.
template <typename Fn>
void parallel_lines(int n, int threads, Fn&& fn) {
    if (threads <= 1 || n < 2 * threads) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const int b = w * chunk;
        const int e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

// One explicit step on a single line u[0..n-1] with stride `stride`, flow in
// the +direction at Courant number nu in [0, 1]. The inflow node u[0] is set
// to `inflow`; the outflow node always takes the first-order upwind update.
// nu == 0 leaves the line untouched so zero-speed steps are exact identities;
// nu == 1 under upwind is an exact one-node shift.
inline void step_line(double* u, int n, std::ptrdiff_t stride, double nu, Scheme scheme,
                      double inflow) {
    if (nu == 0.0) return;
    auto at = [&](int k) -> double& { return u[stride * k]; };
    if (scheme == Scheme::upwind || nu == 1.0) {
        if (nu == 1.0) {
            for (int k = n - 1; k >= 1; --k) at(k) = at(k - 1);
        } else {
            for (int k = n - 1; k >= 1; --k) at(k) -= nu * (at(k) - at(k - 1));
        }
        at(0) = inflow;
        return;
    }
    // Lax-Wendroff interior, upwind outflow node.
    double left_old = at(0);
    for (int k = 1; k < n - 1; ++k) {
        const double c = at(k);
        at(k) = c - 0.5 * nu * (at(k + 1) - left_old) +
                0.5 * nu * nu * (at(k + 1) - 2.0 * c + left_old);
        left_old = c;
    }
    at(n - 1) -= nu * (at(n - 1) - left_old);
    at(0) = inflow;
}

} // namespace detail

// One explicit step of the whole grid along `axis` at uniform Courant number
// nu. inflow holds the boundary value for each line (one entry per row for
// axis x, per column for axis y).
inline void courant_step(Grid2D& g, double nu, Axis axis, Scheme scheme,
                         const std::vector<double>& inflow, int threads = 1) {
    if (!(nu >= 0.0) || nu > 1.0 || !std::isfinite(nu))
        throw NumericalError("courant number out of [0, 1]");
    if (nu == 0.0) return;
    if (axis == Axis::x) {
        if (inflow.size() != static_cast<std::size_t>(g.ny))
            throw std::invalid_argument("inflow needs one value per row");
        detail::parallel_lines(g.ny, threads, [&](int jb, int je) {
            for (int j = jb; j < je; ++j)
                detail::step_line(&g.at(0, j), g.nx, 1, nu, scheme, inflow[std::size_t(j)]);
        });
    } else {
        if (inflow.size() != static_cast<std::size_t>(g.nx))
            throw std::invalid_argument("inflow needs one value per column");
        detail::parallel_lines(g.nx, threads, [&](int ib, int ie) {
            for (int i = ib; i < ie; ++i)
                detail::step_line(&g.at(i, 0), g.ny, g.nx, nu, scheme, inflow[std::size_t(i)]);
        });
    }
}

// Value-semantics step at physical speed and time step; refuses to step past
// the CFL bound and rejects non-finite results.
inline Grid2D advect_step(const Grid2D& in, double speed, double dt, Axis axis,
                          const SolverSpec& spec, const std::vector<double>& inflow) {
    if (!(spec.cfl > 0.0) || spec.cfl > 1.0)
        throw std::invalid_argument("cfl must be in (0, 1]");
    if (!(speed >= 0.0) || !std::isfinite(speed))
        throw std::invalid_argument("advect_step needs speed >= 0");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("advect_step needs dt > 0");
    const double cell = axis == Axis::x ? in.dx : in.dy;
    const double nu = speed * dt / cell;
    if (nu > spec.cfl * (1.0 + 1e-12))
        throw NumericalError("CFL violation: speed*dt/cell exceeds the configured bound");
    Grid2D out = in;
    courant_step(out, nu, axis, spec.scheme, inflow, spec.threads);
    if (!std::isfinite(max_abs(out)))
        throw NumericalError("non-finite values after advection step");
    return out;
}

} // namespace eitstore
