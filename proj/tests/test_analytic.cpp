#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "eitstore/analytic.hpp"
#include "oracle_helpers.hpp"

using namespace eitstore;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const AnalyticSolution& fig2_solution() {
    static const AnalyticSolution sol(fig2_scenario());
    return sol;
}

constexpr double phi1_at_tau1 = 862.6657067421246; // frozen quadrature value

} // namespace

TEST_CASE("probe field at the entrance reproduces the boundary product", "[analytic]") {
    const auto& sol = fig2_solution();
    const auto scn = fig2_scenario();
    for (double t : {0.0, 1.0, 2.5, 6.0, 7.5})
        CHECK_THAT(sol.probe_field(t, 0.0, 100.0), WithinRel(scn.probe_product(t), 1e-9));
    // off the profile peak the transverse factor applies
    CHECK_THAT(sol.probe_field(6.0, 0.0, 120.0),
               WithinRel(scn.probe_product(6.0) * std::exp(-1.0), 1e-9));
}

TEST_CASE("probe field dies with the storing coupling", "[analytic]") {
    const auto& sol = fig2_solution();
    for (double t : {11.5, 13.0, 16.0})
        for (double x : {0.0, 100.0, 400.0, 900.0})
            REQUIRE(sol.probe_field(t, x, 100.0) == 0.0);
}

TEST_CASE("plateau transport is a rigid translation", "[analytic]") {
    const auto& sol = fig2_solution();
    const double shift = sol.phi1(2.0);
    CHECK_THAT(shift, WithinRel(200.0, 1e-12));
    for (int k = 0; k < 200; ++k) {
        const double x = oracle::uniform(0.0, 1000.0);
        const double y = oracle::uniform(60.0, 140.0);
        REQUIRE_THAT(sol.probe_field(2.0, x, y),
                     WithinAbs(sol.probe_field(0.0, x - shift, y), 1e-12));
    }
}

TEST_CASE("probe maximum advances by the retardation length", "[analytic]") {
    const auto& sol = fig2_solution();
    // brute-force argmax over a fine grid, window containing only the first hump
    auto argmax_x = [&](double t) {
        const int n = 45000;
        std::vector<double> vals(n + 1);
        for (int k = 0; k <= n; ++k) vals[std::size_t(k)] = sol.probe_field(t, 450.0 * k / n, 100.0);
        return 450.0 * double(oracle::argmax_abs(vals)) / n;
    };
    const double x4 = argmax_x(4.0);
    const double x5 = argmax_x(5.0);
    const double expected_shift = sol.storing_table().distance(4.0, 5.0);
    CHECK_THAT(expected_shift, WithinRel(100.0, 1e-12));
    CHECK_THAT(x5 - x4, WithinAbs(expected_shift, 0.05));
    CHECK_THAT(x4, WithinAbs(-250.0 + sol.phi1(4.0), 0.05));
}

TEST_CASE("coherence freezes once the storing coupling is off", "[analytic]") {
    const auto& sol = fig2_solution();
    for (int k = 0; k < 100; ++k) {
        const double x = oracle::uniform(0.0, 1100.0);
        const double y = oracle::uniform(0.0, 300.0);
        const double frozen = sol.coherence(11.05, x, y);
        // exact in infinite-c mode: Phi1 is bit-flat on the dark window
        REQUIRE(sol.coherence(11.2, x, y) == frozen);
        REQUIRE(sol.coherence(11.45, x, y) == frozen);
    }
}

TEST_CASE("coherence is continuous across the handoff", "[analytic]") {
    const auto& sol = fig2_solution();
    for (int j = 0; j < 128; ++j)
        for (int i = 0; i < 128; ++i) {
            const double x = 1200.0 * i / 127.0;
            const double y = 520.0 * j / 127.0;
            const double before = sol.coherence(11.5 - 1e-9, x, y);
            const double after = sol.coherence(11.5 + 1e-9, x, y);
            REQUIRE_THAT(after, WithinAbs(before, 1e-6));
        }
}

TEST_CASE("stored coherence peaks where the shifted time shape peaks", "[analytic]") {
    const auto& sol = fig2_solution();
    const int n = 60000;
    std::vector<double> vals(n + 1);
    for (int k = 0; k <= n; ++k)
        vals[std::size_t(k)] = sol.coherence(11.5, 1200.0 * k / n, 100.0);
    const double x_star = 1200.0 * double(oracle::argmax_abs(vals)) / n;
    // the 1.2-amplitude hump was injected at t = 6: x* = Phi1(tau1) - 600
    CHECK_THAT(x_star, WithinAbs(phi1_at_tau1 - 600.0, 0.05));
    CHECK_THAT(sol.phi1(11.5), WithinRel(phi1_at_tau1, 1e-7));
}

TEST_CASE("retrieved field is zero before the handoff", "[analytic]") {
    const auto& sol = fig2_solution();
    for (double t : {0.0, 6.0, 11.0, 11.499})
        for (double x : {100.0, 400.0})
            REQUIRE(sol.new_field(t, x, 100.0) == 0.0);
}

TEST_CASE("retrieved field carries the transverse profile as its shape", "[analytic]") {
    const auto& sol = fig2_solution();
    const auto scn = fig2_scenario();
    const double t = 16.0;
    const double x_cut = phi1_at_tau1 - 600.0; // strongest stored hump
    const int n = 40000;
    std::vector<double> cut(n + 1);
    for (int k = 0; k <= n; ++k) cut[std::size_t(k)] = sol.new_field(t, x_cut, 520.0 * k / n);
    const double y_star = 520.0 * double(oracle::argmax_abs(cut)) / n;
    // peak rides at 100 + Phi2(16), frozen quadrature value 162.6657...
    CHECK_THAT(sol.phi2(16.0), WithinRel(162.6657067421246, 1e-6));
    CHECK_THAT(y_star, WithinAbs(100.0 + sol.phi2(16.0), 0.05));
    // shape congruent to the profile: ratios match a(.) around its peak
    const double peak = sol.new_field(t, x_cut, y_star);
    for (double d : {-30.0, -10.0, 10.0, 30.0})
        CHECK_THAT(sol.new_field(t, x_cut, y_star + d) / peak,
                   WithinAbs(scn.profile(100.0 + d) / scn.profile(100.0), 1e-4));
}

TEST_CASE("retrieved field's transverse dependence is the stored time shape", "[analytic]") {
    const auto& sol = fig2_solution();
    const double t = 16.0;
    const double y = 100.0 + sol.phi2(t);
    const auto f = sol.probe_shape();
    for (double x : {100.0, 262.7, 450.0, 612.7, 800.0}) {
        const double expect = sol.new_field(t, 0.0, y) / f(0.0 - phi1_at_tau1) *
                              f(x - phi1_at_tau1);
        REQUIRE_THAT(sol.new_field(t, x, y), WithinRel(expect, 1e-6));
    }
}

TEST_CASE("interchange map returns the profile and the shifted time shape", "[analytic]") {
    const auto& sol = fig2_solution();
    const auto scn = fig2_scenario();
    const auto [g, b] = sol.interchange_map();

    // g is the profile, bit for bit
    for (int k = 0; k <= 2000; ++k) {
        const double y = 520.0 * k / 2000.0;
        REQUIRE(g(y) == scn.profile(y));
    }

    // b is f shifted by the stored displacement
    const auto f = sol.probe_shape();
    for (int k = 0; k <= 2000; ++k) {
        const double x = 1200.0 * k / 2000.0;
        REQUIRE_THAT(b(x), WithinAbs(f(x - sol.phi1(11.5)), 1e-12));
    }

    // two humps with the 0.9 : 1.2 amplitude ratio, first-in deepest
    const int n = 60000;
    std::vector<double> vals(n + 1);
    for (int k = 0; k <= n; ++k) vals[std::size_t(k)] = b(1200.0 * k / n);
    const double x_peak = 1200.0 * double(oracle::argmax_abs(vals)) / n;
    CHECK_THAT(x_peak, WithinAbs(phi1_at_tau1 - 600.0, 0.05));
    const double deep = b(phi1_at_tau1 - 250.0);
    const double shallow = b(phi1_at_tau1 - 600.0);
    CHECK_THAT(deep / shallow, WithinAbs(0.9 / 1.2, 1e-4));
}

TEST_CASE("finite light speed reduces to the infinite-c forms for large c", "[analytic]") {
    auto scn = fig2_scenario();
    scn.medium.c = 1e9;
    const AnalyticSolution fin(scn);
    const auto& inf = fig2_solution();
    for (int k = 0; k < 50; ++k) {
        const double t = oracle::uniform(0.5, 16.5);
        const double x = oracle::uniform(0.0, 1100.0);
        const double y = oracle::uniform(0.0, 500.0);
        REQUIRE_THAT(fin.coherence(t, x, y), WithinAbs(inf.coherence(t, x, y), 1e-5));
        REQUIRE_THAT(fin.new_field(t, x, y), WithinAbs(inf.new_field(t, x, y), 1e-4));
    }
    // the finite-c interchange map is sampled but must agree closely
    const auto [g_fin, b_fin] = fin.interchange_map(0.05);
    const auto [g_inf, b_inf] = inf.interchange_map();
    for (double x : {100.0, 262.7, 612.7, 900.0})
        CHECK_THAT(b_fin(x), WithinAbs(b_inf(x), 1e-5));
    CHECK(g_fin(100.0) == g_inf(100.0));
}

TEST_CASE("retardation length accessors stay consistent", "[analytic]") {
    const auto& sol = fig2_solution();
    CHECK(sol.phi2(11.5) == 0.0);
    CHECK(sol.phi2(5.0) == 0.0);
    CHECK(sol.phi1(0.0) == 0.0);
    CHECK_THAT(sol.phi2(17.0), WithinRel(262.6657067421246, 1e-6));
}
