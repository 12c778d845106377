#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace eitstore {

enum class Scheme { upwind, lax_wendroff };
enum class Axis { x, y };

// Node-centered scalar field on [0, (nx-1)dx] x [0, (ny-1)dy], row-major
// with rows of constant y: value(i, j) = v[j*nx + i].
struct Grid2D {
    int nx = 0, ny = 0;
    double dx = 0.0, dy = 0.0;
    std::vector<double> v;

    static Grid2D zeros(int nx, int ny, double dx, double dy) {
        if (nx < 2 || ny < 1 || !(dx > 0.0) || !(dy > 0.0))
            throw std::invalid_argument("grid needs nx >= 2, ny >= 1 and positive spacings");
        Grid2D g;
        g.nx = nx;
        g.ny = ny;
        g.dx = dx;
        g.dy = dy;
        g.v.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0.0);
        return g;
    }

    double& at(int i, int j) { return v[std::size_t(j) * nx + i]; }
    double at(int i, int j) const { return v[std::size_t(j) * nx + i]; }
    double x(int i) const { return dx * i; }
    double y(int j) const { return dy * j; }
    bool same_shape(const Grid2D& o) const {
        return nx == o.nx && ny == o.ny && dx == o.dx && dy == o.dy;
    }
};

inline double max_abs(const Grid2D& g) {
    double m = 0.0;
    for (double x : g.v) m = std::max(m, std::abs(x));
    return m;
}

inline double l2_norm(const Grid2D& g) {
    double s = 0.0;
    for (double x : g.v) s += x * x;
    return std::sqrt(s);
}

// Coherence state of the medium at one instant.
struct CoherenceGrid {
    Grid2D rho;
    double t = 0.0;
};

struct Snapshot {
    double t = 0.0;
    int stage = 1;        // 1: storing along x, 2: retrieving along y
    Grid2D field;         // active-stage Rabi field (probe or retrieved)
    Grid2D coherence;     // rho21
};

struct SnapshotSeries {
    std::vector<Snapshot> snaps;
};

// Explicit-solver settings.
struct SolverSpec {
    Scheme scheme = Scheme::lax_wendroff;
    double cfl = 0.8;
    double dt_cap = 0.05;                // T units
    int nx = 512;
    int ny = 512;
    int threads = 1;
    std::vector<double> snapshot_times;  // strictly increasing, in [0, t_max]
};

inline void validate_solver_spec(const SolverSpec& s) {
    if (!(s.cfl > 0.0) || s.cfl > 1.0) throw std::invalid_argument("cfl must be in (0, 1]");
    if (!(s.dt_cap > 0.0)) throw std::invalid_argument("dt_cap must be > 0");
    if (s.nx < 2 || s.ny < 2) throw std::invalid_argument("grid needs nx, ny >= 2");
    if (s.threads < 1) throw std::invalid_argument("threads must be >= 1");
    for (std::size_t k = 1; k < s.snapshot_times.size(); ++k)
        if (!(s.snapshot_times[k] > s.snapshot_times[k - 1]))
            throw std::invalid_argument("snapshot times must be strictly increasing");
}

} // namespace eitstore
