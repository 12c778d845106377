#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eitstore/envelope.hpp"

namespace eitstore {

enum class ScheduleSense { turn_off, turn_on };

// Time profile of a coupling beam's Rabi frequency. A turn-off schedule is a
// plateau followed by a Gaussian edge; a turn-on schedule rises through a
// Gaussian edge onto a plateau and is identically zero before `activation`
// (the handoff time tau1). Tails are clipped to exact zero beyond
// trunc_widths edge widths, so a genuine zero-coupling window exists between
// a turn-off and a later turn-on.
struct CouplingSchedule {
    double plateau = 0.0;    // Rabi amplitude, 1/T
    double edge = 0.0;       // Gaussian edge center, T
    double width = 1.0;      // Gaussian edge width, T
    ScheduleSense sense = ScheduleSense::turn_off;
    double activation = 0.0; // turn-on only: hard zero before this time
    double trunc_widths = 3.0;
};

inline void validate_schedule(const CouplingSchedule& s) {
    if (!(s.plateau >= 0.0) || !std::isfinite(s.plateau))
        throw std::invalid_argument("schedule plateau must be finite and >= 0");
    if (!(s.width > 0.0) || !std::isfinite(s.width))
        throw std::invalid_argument("schedule edge width must be finite and > 0");
    if (!std::isfinite(s.edge) || !std::isfinite(s.activation))
        throw std::invalid_argument("schedule times must be finite");
    if (!(s.trunc_widths > 0.0))
        throw std::invalid_argument("schedule truncation radius must be > 0");
}

inline double eval_schedule(const CouplingSchedule& s, double t) {
    if (s.sense == ScheduleSense::turn_on && t < s.activation) return 0.0;
    return plateau_gaussian_value(s.plateau, s.edge, s.width,
                                  s.sense == ScheduleSense::turn_off,
                                  s.trunc_widths, t);
}

// Time from which (turn-off) or up to which (turn-on) the schedule is
// identically zero.
inline double schedule_zero_boundary(const CouplingSchedule& s) {
    if (s.sense == ScheduleSense::turn_off) return s.edge + s.trunc_widths * s.width;
    return std::max(s.activation, s.edge - s.trunc_widths * s.width);
}

} // namespace eitstore
