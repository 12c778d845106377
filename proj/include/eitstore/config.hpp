#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "eitstore/errors.hpp"
#include "eitstore/grid.hpp"
#include "eitstore/scenario.hpp"

namespace eitstore {

// Single-atom oracle run settings (the `oracle` subcommand).
struct OracleSpec {
    double omega_c = 10.0; // constant coupling, 1/T
    std::vector<GaussianTerm> probe_terms = {{0.9, 2.5, 1.0}, {1.2, 6.0, 1.0}};
    double delta = 0.0;
    double gamma3 = 0.0;
    double gamma21 = 0.0;
    double dt = 1e-3;
    double t_end = 12.0;
    double r21_max = 0.05;   // pass thresholds, normalized residuals
    double pop33_max = 0.02;
};

struct OutputSpec {
    std::string dir = "out";
    bool binary = false;
    std::string medium_preset; // path of an atom preset file, for header annotations
    double T_seconds = 0.0;    // physical probe duration; 0 = no annotation
};

struct ParsedConfig {
    ScenarioConfig scenario = fig2_scenario();
    SolverSpec solver = default_solver();
    OracleSpec oracle;
    OutputSpec output;
    std::vector<std::string> warnings;

    static SolverSpec default_solver() {
        SolverSpec s;
        s.snapshot_times = {2.0, 6.0, 9.0, 11.5, 13.0, 16.0, 17.0};
        return s;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline double parse_number(const std::string& v, int line) {
    if (v == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("not a number: `" + v + "`", line);
    }
}

inline int parse_int(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("not an integer: `" + v + "`", line);
    }
}

inline bool parse_bool(const std::string& v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("not a boolean (true/false): `" + v + "`", line);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(std::string_view(s).substr(start)));
            break;
        }
        out.push_back(trim(std::string_view(s).substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

// "amp:center:width, amp:center:width, ..." or "none"
inline std::vector<GaussianTerm> parse_terms(const std::string& v, int line) {
    std::vector<GaussianTerm> terms;
    if (v == "none") return terms;
    for (const auto& part : split(v, ',')) {
        const auto f = split(part, ':');
        if (f.size() != 3) throw ConfigError("term needs amp:center:width, got `" + part + "`", line);
        terms.push_back({parse_number(f[0], line), parse_number(f[1], line), parse_number(f[2], line)});
    }
    return terms;
}

inline std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    if (v == "none") return out;
    for (const auto& part : split(v, ',')) out.push_back(parse_number(part, line));
    return out;
}

inline std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_terms(const std::vector<GaussianTerm>& terms) {
    if (terms.empty()) return "none";
    std::string out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (k) out += ", ";
        out += fmt(terms[k].amplitude) + ":" + fmt(terms[k].center) + ":" + fmt(terms[k].width);
    }
    return out;
}

inline std::string fmt_list(const std::vector<double>& v) {
    if (v.empty()) return "none";
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ", ";
        out += fmt(v[k]);
    }
    return out;
}

} // namespace detail

// Parses `key = value` configuration text (# comments). Unknown keys are
// errors in strict mode and collected as warnings otherwise. Defaults are
// the fig2 preset with the standard solver settings, so an empty config is
// already a complete run.
inline ParsedConfig parse_config(std::string_view text, bool strict = false) {
    using namespace detail;
    ParsedConfig cfg;
    double envelope_trunc = cfg.scenario.probe_product.truncation_widths();
    double schedule_trunc = cfg.scenario.storing.trunc_widths;
    std::vector<GaussianTerm> probe_terms, profile_terms;
    bool probe_set = false, profile_set = false;

    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw ConfigError("expected `key = value`", lineno);
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key", lineno);
        if (value.empty()) throw ConfigError("missing value for `" + key + "`", lineno);

        auto& scn = cfg.scenario;
        if (key == "scenario.preset") {
            if (value != "fig2") throw ConfigError("unknown preset `" + value + "`", lineno);
            scn = fig2_scenario();
        } else if (key == "scenario.tau1") scn.tau1 = parse_number(value, lineno);
        else if (key == "scenario.x_max") scn.domain.x_max = parse_number(value, lineno);
        else if (key == "scenario.y_max") scn.domain.y_max = parse_number(value, lineno);
        else if (key == "scenario.t_max") scn.domain.t_max = parse_number(value, lineno);
        else if (key == "scenario.probe_terms") { probe_terms = parse_terms(value, lineno); probe_set = true; }
        else if (key == "scenario.profile_terms") { profile_terms = parse_terms(value, lineno); profile_set = true; }
        else if (key == "scenario.envelope_truncation") envelope_trunc = parse_number(value, lineno);
        else if (key == "scenario.schedule_truncation") schedule_trunc = parse_number(value, lineno);
        else if (key == "scenario.storing.plateau") scn.storing.plateau = parse_number(value, lineno);
        else if (key == "scenario.storing.edge") scn.storing.edge = parse_number(value, lineno);
        else if (key == "scenario.storing.width") scn.storing.width = parse_number(value, lineno);
        else if (key == "scenario.retrieving.plateau") scn.retrieving.plateau = parse_number(value, lineno);
        else if (key == "scenario.retrieving.edge") scn.retrieving.edge = parse_number(value, lineno);
        else if (key == "scenario.retrieving.width") scn.retrieving.width = parse_number(value, lineno);
        else if (key == "scenario.acknowledge_diagnostics") scn.acknowledge_diagnostics = parse_bool(value, lineno);
        else if (key == "medium.q") { scn.medium.q_p = parse_number(value, lineno); scn.medium.q_c = scn.medium.q_p; }
        else if (key == "medium.c") scn.medium.c = parse_number(value, lineno);
        else if (key == "medium.T") scn.medium.T_ref = parse_number(value, lineno);
        else if (key == "medium.preset") cfg.output.medium_preset = value;
        else if (key == "medium.T_seconds") cfg.output.T_seconds = parse_number(value, lineno);
        else if (key == "solver.scheme") {
            if (value == "upwind") cfg.solver.scheme = Scheme::upwind;
            else if (value == "lw") cfg.solver.scheme = Scheme::lax_wendroff;
            else throw ConfigError("scheme must be upwind or lw", lineno);
        }
        else if (key == "solver.cfl") cfg.solver.cfl = parse_number(value, lineno);
        else if (key == "solver.dt_cap") cfg.solver.dt_cap = parse_number(value, lineno);
        else if (key == "solver.nx") cfg.solver.nx = parse_int(value, lineno);
        else if (key == "solver.ny") cfg.solver.ny = parse_int(value, lineno);
        else if (key == "solver.threads") cfg.solver.threads = parse_int(value, lineno);
        else if (key == "solver.snapshots") cfg.solver.snapshot_times = parse_list(value, lineno);
        else if (key == "output.dir") cfg.output.dir = value;
        else if (key == "output.binary") cfg.output.binary = parse_bool(value, lineno);
        else if (key == "oracle.omega_c") cfg.oracle.omega_c = parse_number(value, lineno);
        else if (key == "oracle.probe_terms") cfg.oracle.probe_terms = parse_terms(value, lineno);
        else if (key == "oracle.delta") cfg.oracle.delta = parse_number(value, lineno);
        else if (key == "oracle.gamma3") cfg.oracle.gamma3 = parse_number(value, lineno);
        else if (key == "oracle.gamma21") cfg.oracle.gamma21 = parse_number(value, lineno);
        else if (key == "oracle.dt") cfg.oracle.dt = parse_number(value, lineno);
        else if (key == "oracle.t_end") cfg.oracle.t_end = parse_number(value, lineno);
        else if (key == "oracle.r21_max") cfg.oracle.r21_max = parse_number(value, lineno);
        else if (key == "oracle.pop33_max") cfg.oracle.pop33_max = parse_number(value, lineno);
        else if (strict) throw ConfigError("unknown key `" + key + "`", lineno);
        else cfg.warnings.push_back("line " + std::to_string(lineno) + ": unknown key `" + key + "` ignored");
    }

    try {
        if (probe_set)
            cfg.scenario.probe_product = Envelope::gaussian_sum(probe_terms, envelope_trunc);
        else if (envelope_trunc != cfg.scenario.probe_product.truncation_widths())
            cfg.scenario.probe_product =
                Envelope::gaussian_sum(cfg.scenario.probe_product.terms(), envelope_trunc);
        if (profile_set)
            cfg.scenario.profile = Envelope::gaussian_sum(profile_terms, envelope_trunc);
        else if (envelope_trunc != cfg.scenario.profile.truncation_widths())
            cfg.scenario.profile =
                Envelope::gaussian_sum(cfg.scenario.profile.terms(), envelope_trunc);
        cfg.scenario.storing.trunc_widths = schedule_trunc;
        cfg.scenario.retrieving.trunc_widths = schedule_trunc;
        // the retrieval gate follows tau1 by construction
        cfg.scenario.retrieving.activation = cfg.scenario.tau1;
        validate_scenario(cfg.scenario);
        validate_solver_spec(cfg.solver);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

// Canonical text form of a resolved configuration; parse_config of the
// output reproduces the input struct key for key.
inline std::string print_config(const ParsedConfig& cfg) {
    using namespace detail;
    std::string out;
    auto kv = [&out](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
    const auto& scn = cfg.scenario;
    kv("scenario.tau1", fmt(scn.tau1));
    kv("scenario.x_max", fmt(scn.domain.x_max));
    kv("scenario.y_max", fmt(scn.domain.y_max));
    kv("scenario.t_max", fmt(scn.domain.t_max));
    kv("scenario.probe_terms", fmt_terms(scn.probe_product.terms()));
    kv("scenario.profile_terms", fmt_terms(scn.profile.terms()));
    kv("scenario.envelope_truncation", fmt(scn.probe_product.truncation_widths()));
    kv("scenario.schedule_truncation", fmt(scn.storing.trunc_widths));
    kv("scenario.storing.plateau", fmt(scn.storing.plateau));
    kv("scenario.storing.edge", fmt(scn.storing.edge));
    kv("scenario.storing.width", fmt(scn.storing.width));
    kv("scenario.retrieving.plateau", fmt(scn.retrieving.plateau));
    kv("scenario.retrieving.edge", fmt(scn.retrieving.edge));
    kv("scenario.retrieving.width", fmt(scn.retrieving.width));
    kv("scenario.acknowledge_diagnostics", scn.acknowledge_diagnostics ? "true" : "false");
    kv("medium.q", fmt(scn.medium.q_p));
    kv("medium.c", fmt(scn.medium.c));
    kv("medium.T", fmt(scn.medium.T_ref));
    if (!cfg.output.medium_preset.empty()) kv("medium.preset", cfg.output.medium_preset);
    if (cfg.output.T_seconds > 0.0) kv("medium.T_seconds", fmt(cfg.output.T_seconds));
    kv("solver.scheme", cfg.solver.scheme == Scheme::upwind ? "upwind" : "lw");
    kv("solver.cfl", fmt(cfg.solver.cfl));
    kv("solver.dt_cap", fmt(cfg.solver.dt_cap));
    kv("solver.nx", std::to_string(cfg.solver.nx));
    kv("solver.ny", std::to_string(cfg.solver.ny));
    kv("solver.threads", std::to_string(cfg.solver.threads));
    kv("solver.snapshots", fmt_list(cfg.solver.snapshot_times));
    kv("output.dir", cfg.output.dir);
    kv("output.binary", cfg.output.binary ? "true" : "false");
    kv("oracle.omega_c", fmt(cfg.oracle.omega_c));
    kv("oracle.probe_terms", fmt_terms(cfg.oracle.probe_terms));
    kv("oracle.delta", fmt(cfg.oracle.delta));
    kv("oracle.gamma3", fmt(cfg.oracle.gamma3));
    kv("oracle.gamma21", fmt(cfg.oracle.gamma21));
    kv("oracle.dt", fmt(cfg.oracle.dt));
    kv("oracle.t_end", fmt(cfg.oracle.t_end));
    kv("oracle.r21_max", fmt(cfg.oracle.r21_max));
    kv("oracle.pop33_max", fmt(cfg.oracle.pop33_max));
    return out;
}

} // namespace eitstore
