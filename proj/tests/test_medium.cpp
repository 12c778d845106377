#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eitstore/medium.hpp"
#include "eitstore/scenario.hpp"
#include "oracle_helpers.hpp"

using namespace eitstore;
using Catch::Matchers::WithinRel;

namespace {
AtomPreset rb85() {
    return load_atom_preset(std::string(EITSTORE_SOURCE_DIR) + "/data/rb85_d1.preset");
}
} // namespace

TEST_CASE("coupling constant scales linearly in density", "[medium]") {
    auto p = rb85();
    const double q1 = coupling_constant(p);
    p.density *= 2.0;
    CHECK(coupling_constant(p) == 2.0 * q1); // power-of-two scaling is exact
}

TEST_CASE("coupling constant vanishes quadratically with the dipole", "[medium]") {
    auto p = rb85();
    const double q1 = coupling_constant(p);
    p.mu *= 0.5;
    CHECK(coupling_constant(p) == 0.25 * q1);
    p.mu = 0.0;
    CHECK_THROWS_AS(coupling_constant(p), std::invalid_argument);
}

TEST_CASE("coupling constant homogeneity under random scalings", "[medium]") {
    const auto base = rb85();
    const double q0 = coupling_constant(base);
    for (int k = 0; k < 200; ++k) {
        auto p = base;
        const double sn = oracle::uniform(0.1, 10.0);
        const double sm = oracle::uniform(0.1, 10.0);
        p.density *= sn;
        p.mu *= sm;
        CHECK_THAT(coupling_constant(p), WithinRel(q0 * sn * sm * sm, 1e-12));
    }
}

TEST_CASE("Rb85 D1 preset reproduces the frozen scalar computation", "[medium]") {
    const auto p = rb85();
    const double q = coupling_constant(p);
    // independently computed from the same line constants
    CHECK_THAT(q, WithinRel(6.530578936282e11, 1e-6));
    const double x0 = characteristic_length(q, 1e-6);
    CHECK_THAT(x0, WithinRel(1.531257810e-6, 1e-6));
    // the published estimate is 0.002 cm; the honest computation lands about
    // three orders of magnitude below it (see the acceptance suite)
    CHECK(x0 < 0.002);
}

TEST_CASE("characteristic length identities", "[medium]") {
    CHECK(characteristic_length(1.0, 1.0) == 1.0);
    const double x0 = characteristic_length(3.7, 2.9);
    CHECK_THAT(characteristic_length(7.4, 2.9), WithinRel(0.5 * x0, 1e-15));
    for (int k = 0; k < 100; ++k) {
        const double q = oracle::uniform(1e-3, 1e3);
        const double T = oracle::uniform(1e-3, 1e3);
        CHECK_THAT(characteristic_length(q, T) * q * T, WithinRel(1.0, 1e-14));
    }
    CHECK_THROWS_AS(characteristic_length(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("preset parsing rejects malformed files", "[medium]") {
    std::istringstream bad("omega = 1e15\nmu = not_a_number\ndensity = 1e14\n");
    CHECK_THROWS_AS(parse_atom_preset(bad), ConfigError);
    std::istringstream missing("omega = 1e15\nmu = 1e-18\n");
    CHECK_THROWS_AS(parse_atom_preset(missing), ConfigError);
    std::istringstream unknown("omega = 1e15\nmu = 1e-18\ndensity = 1e14\nextra = 1\n");
    CHECK_THROWS_AS(parse_atom_preset(unknown), ConfigError);
}

TEST_CASE("regime diagnostics fire on the documented violations", "[medium]") {
    SECTION("fig2 is clean") { CHECK(validate_regime(fig2_scenario()).empty()); }

    SECTION("weak coupling plateau") {
        auto scn = fig2_scenario();
        scn.storing.plateau = 1.0; // Omega*T = 1
        scn.retrieving.plateau = 1.0;
        const auto diags = validate_regime(scn);
        bool adiab = false;
        for (const auto& d : diags) adiab = adiab || d.code == "adiabaticity";
        CHECK(adiab);
    }

    SECTION("retrieval wants to run before the handoff") {
        auto scn = fig2_scenario();
        scn.tau1 = 10.0;
        scn.retrieving.edge = 8.0;
        scn.retrieving.activation = scn.tau1;
        const auto diags = validate_regime(scn);
        bool hit = false;
        for (const auto& d : diags) hit = hit || d.code == "retrieval-before-handoff";
        CHECK(hit);
    }

    SECTION("storing coupling still on at tau1") {
        auto scn = fig2_scenario();
        scn.storing.edge = 11.4; // tail at tau1 = 11.5 is near the plateau
        scn.retrieving.activation = scn.tau1;
        const auto diags = validate_regime(scn);
        bool hit = false;
        for (const auto& d : diags) hit = hit || d.code == "storing-tail";
        CHECK(hit);
    }
}
