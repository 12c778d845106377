#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "eitstore/envelope.hpp"
#include "eitstore/medium.hpp"
#include "eitstore/schedule.hpp"

namespace eitstore {

struct DomainExtents {
    double x_max = 1200.0; // x0 units
    double y_max = 520.0;  // x0 units
    double t_max = 17.0;   // T units
};

// Complete description of one storage/retrieval run. The probe enters along
// x under the storing coupling; at tau1 the stored coherence is handed to
// the retrieving coupling, which reads it out along y.
struct ScenarioConfig {
    // Boundary product envelope at x = 0: Omega_p(t,0) * T as plotted, i.e.
    // probe time shape times the (constant) storing plateau times T.
    Envelope probe_product;
    Envelope profile; // transverse profile a(y)
    CouplingSchedule storing;    // Omega_c1, along x
    CouplingSchedule retrieving; // Omega_c2, along y; zero before tau1
    double tau1 = 11.5;
    MediumParams medium;
    DomainExtents domain;
    bool acknowledge_diagnostics = false;

    // Storing-stage transport speed at full plateau, x0/T units.
    double plateau_speed() const {
        return storing.plateau * storing.plateau / medium.q_p;
    }

    // Probe spatial shape f: the product envelope mapped through the rigid
    // plateau transport (time c -> position -speed*c) and divided by the
    // plateau Rabi area. Avoids dividing by the schedule after turn-off.
    Envelope probe_shape() const {
        return probe_product.time_to_space(plateau_speed(),
                                           1.0 / (storing.plateau * medium.T_ref));
    }
};

// Figure-2 preset in dimensionless units (t in T, lengths in x0, Rabi in
// 1/T): two-hump probe product 0.9 exp(-(t-2.5)^2) + 1.2 exp(-(t-6)^2),
// profile exp(-((y-100)/20)^2), storing plateau 10 with edge at 8,
// retrieving plateau 10 with edge at 15, handoff at tau1 = 11.5.
inline ScenarioConfig fig2_scenario() {
    ScenarioConfig s;
    s.probe_product = Envelope::gaussian_sum({{0.9, 2.5, 1.0}, {1.2, 6.0, 1.0}});
    s.profile = Envelope::gaussian_sum({{1.0, 100.0, 20.0}});
    s.tau1 = 11.5;
    s.storing = CouplingSchedule{10.0, 8.0, 1.0, ScheduleSense::turn_off, 0.0, 3.0};
    s.retrieving = CouplingSchedule{10.0, 15.0, 1.0, ScheduleSense::turn_on, s.tau1, 3.0};
    return s;
}

struct Diagnostic {
    std::string code;
    std::string message;
};

struct RegimeThresholds {
    double probe_ratio = 0.2;      // max|Omega_p| / storing plateau
    double min_plateau_area = 5.0; // Omega_bar * T
    double tail_rel = 1e-4;        // schedule tails at tau1, relative to plateau
};

// Validity checks behind the adiabatic weak-probe reduction and the
// storage/retrieval timing. Returns one diagnostic per violated condition;
// an empty list means the scenario is in regime.
inline std::vector<Diagnostic> validate_regime(const ScenarioConfig& scn,
                                               const RegimeThresholds& th = {}) {
    std::vector<Diagnostic> out;
    const double plateau1 = scn.storing.plateau;

    const double probe_peak = scn.probe_product.max_value() / scn.medium.T_ref;
    if (!(plateau1 > 0.0) || probe_peak / plateau1 > th.probe_ratio)
        out.push_back({"weak-probe",
                       "max probe Rabi " + std::to_string(probe_peak) +
                           " exceeds " + std::to_string(th.probe_ratio) +
                           " of the storing plateau"});

    for (const auto* sch : {&scn.storing, &scn.retrieving}) {
        const double area = sch->plateau * scn.medium.T_ref;
        if (area < th.min_plateau_area)
            out.push_back({"adiabaticity",
                           "coupling plateau times T is " + std::to_string(area) +
                               ", below " + std::to_string(th.min_plateau_area)});
    }

    // Retrieval must not want to be on before tau1: evaluate the rise shape
    // without the activation gate at tau1.
    const double ungated = plateau_gaussian_value(
        scn.retrieving.plateau, scn.retrieving.edge, scn.retrieving.width,
        /*plateau_before_edge=*/false, scn.retrieving.trunc_widths, scn.tau1);
    if (scn.retrieving.plateau > 0.0 && ungated > th.tail_rel * scn.retrieving.plateau)
        out.push_back({"retrieval-before-handoff",
                       "retrieving coupling would be non-negligible at tau1"});

    // Storing coupling must be done by tau1.
    const double tail1 = eval_schedule(scn.storing, scn.tau1);
    if (plateau1 > 0.0 && tail1 > th.tail_rel * plateau1)
        out.push_back({"storing-tail",
                       "storing coupling is still " + std::to_string(tail1 / plateau1) +
                           " of its plateau at tau1"});

    return out;
}

// Structural validation; throws on malformed scenarios.
inline void validate_scenario(const ScenarioConfig& scn) {
    validate_medium(scn.medium);
    validate_schedule(scn.storing);
    validate_schedule(scn.retrieving);
    if (scn.retrieving.sense != ScheduleSense::turn_on)
        throw std::invalid_argument("retrieving schedule must have turn-on sense");
    if (scn.storing.sense != ScheduleSense::turn_off)
        throw std::invalid_argument("storing schedule must have turn-off sense");
    if (scn.retrieving.activation < scn.tau1)
        throw std::invalid_argument("retrieving schedule must stay zero before tau1");
    if (!(scn.tau1 > 0.0) || !std::isfinite(scn.tau1))
        throw std::invalid_argument("tau1 must be finite and > 0");
    if (!(scn.domain.x_max > 0.0) || !(scn.domain.y_max > 0.0) || !(scn.domain.t_max > 0.0))
        throw std::invalid_argument("domain extents must be > 0");
    if (scn.domain.t_max <= scn.tau1)
        throw std::invalid_argument("t_max must exceed tau1");
}

} // namespace eitstore
