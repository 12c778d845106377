#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "eitstore/errors.hpp"

namespace eitstore {

// CGS constants used by the coupling-constant formula.
inline constexpr double hbar_cgs = 1.054571817e-27;  // erg s
inline constexpr double light_speed_cgs = 2.99792458e10; // cm/s

// Medium parameters in the internal unit system (time in T_ref, length in
// x0 = 1/(q_p T_ref), Rabi frequencies in 1/T_ref). c = infinity disables
// all retardation terms.
struct MediumParams {
    double q_p = 1.0;
    double q_c = 1.0;
    double c = std::numeric_limits<double>::infinity(); // x0 per T_ref
    double T_ref = 1.0;

    bool finite_c() const { return std::isfinite(c); }
    double x0() const { return 1.0 / (q_p * T_ref); }
};

inline void validate_medium(const MediumParams& m) {
    if (!(m.q_p > 0.0) || !std::isfinite(m.q_p)) throw std::invalid_argument("q_p must be finite and > 0");
    if (!(m.q_c > 0.0) || !std::isfinite(m.q_c)) throw std::invalid_argument("q_c must be finite and > 0");
    if (!(m.T_ref > 0.0) || !std::isfinite(m.T_ref)) throw std::invalid_argument("T_ref must be finite and > 0");
    if (!(m.c > 0.0)) throw std::invalid_argument("c must be > 0 (may be infinite)");
}

// Atomic-line constants in CGS: omega in rad/s, mu in statC cm, density in
// cm^-3. These are inputs taken from standard line data, not results.
struct AtomPreset {
    double omega = 0.0;
    double mu = 0.0;
    double density = 0.0;
    std::string units = "cgs";
};

// q = 2 pi omega mu^2 N / (hbar c), in 1/(cm s).
inline double coupling_constant(const AtomPreset& p) {
    if (!(p.omega > 0.0) || !(p.mu > 0.0) || !(p.density > 0.0))
        throw std::invalid_argument("atom preset entries must be > 0");
    if (p.units != "cgs")
        throw std::invalid_argument("atom preset units must be cgs");
    return 2.0 * M_PI * p.omega * p.mu * p.mu * p.density / (hbar_cgs * light_speed_cgs);
}

// x0 = 1/(q T).
inline double characteristic_length(double q, double T) {
    if (!(q > 0.0) || !(T > 0.0)) throw std::invalid_argument("characteristic_length needs q > 0 and T > 0");
    return 1.0 / (q * T);
}

// Reads a preset file of `key = value` lines (# comments). Required keys:
// omega, mu, density, units.
inline AtomPreset parse_atom_preset(std::istream& in) {
    AtomPreset p;
    bool have_omega = false, have_mu = false, have_density = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ConfigError("expected `key = value`", lineno);
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto number = [&](const char* what) {
            try {
                std::size_t used = 0;
                const double v = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(what);
                return v;
            } catch (const std::exception&) {
                throw ConfigError(std::string("bad number for ") + what, lineno);
            }
        };
        if (key == "omega") { p.omega = number("omega"); have_omega = true; }
        else if (key == "mu") { p.mu = number("mu"); have_mu = true; }
        else if (key == "density") { p.density = number("density"); have_density = true; }
        else if (key == "units") { p.units = value; }
        else throw ConfigError("unknown preset key `" + key + "`", lineno);
    }
    if (!have_omega || !have_mu || !have_density)
        throw ConfigError("preset needs omega, mu and density");
    return p;
}

inline AtomPreset load_atom_preset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open preset file " + path);
    return parse_atom_preset(in);
}

} // namespace eitstore
