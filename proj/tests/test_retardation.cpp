#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "eitstore/retardation.hpp"
#include "eitstore/scenario.hpp"
#include "oracle_helpers.hpp"

using namespace eitstore;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

RetardationTable fig2_storing_table() {
    return RetardationTable(fig2_scenario().storing, 1.0, 0.0, 18.0, 1.0 / 200.0);
}

RetardationTable fig2_retrieving_table() {
    return RetardationTable(fig2_scenario().retrieving, 1.0, 0.0, 18.0, 1.0 / 200.0);
}

} // namespace

TEST_CASE("constant coupling gives the plain product", "[retardation]") {
    // plateau far in the future: Omega = 10 throughout [0, 4]
    CouplingSchedule constant{10.0, 1e6, 1.0, ScheduleSense::turn_off, 0.0, 3.0};
    RetardationTable tab(constant, 1.0, 0.0, 4.0, 1.0 / 200.0);
    CHECK_THAT(retardation_length(tab, 0.0, 2.0), WithinRel(200.0, 1e-13));
    CHECK_THAT(tab.advance_time(0.0, 80.0, 4.0), WithinRel(0.8, 1e-12));
}

TEST_CASE("retrieving table is exactly flat before the rise", "[retardation]") {
    const auto tab = fig2_retrieving_table();
    CHECK(retardation_length(tab, 0.0, 11.4) == 0.0);
    CHECK(retardation_length(tab, 11.5, 11.99) == 0.0); // clipped rise starts at 12
    CHECK(tab.advance_time(11.5, 1.0, 11.9) == 11.9);   // budget not reached: limit
}

TEST_CASE("fig2 storing retardation matches the quadrature oracle", "[retardation]") {
    const auto scn = fig2_scenario();
    const auto tab = fig2_storing_table();

    // independent composite-Simpson oracle on the exact integrand pieces
    const double plateau_part = 100.0 * 8.0;
    const double edge_part = oracle::simpson(
        [&](double t) {
            const double w = eval_schedule(scn.storing, t);
            return w * w;
        },
        8.0, 11.0, 60000);
    const double expect = plateau_part + edge_part;

    // closed form of the same integral, frozen
    CHECK_THAT(expect, WithinRel(862.6657067421246, 1e-10));
    CHECK_THAT(retardation_length(tab, 0.0, 12.0), WithinRel(expect, 5e-6));
    // flat after the clipped edge: Phi(tau1) == Phi(12)
    CHECK(tab.phi(11.5) == tab.phi(12.0));
}

TEST_CASE("retardation is monotone and additive", "[retardation]") {
    const auto tab = fig2_storing_table();
    for (int k = 0; k < 300; ++k) {
        double t0 = oracle::uniform(0.0, 17.0);
        double t1 = oracle::uniform(0.0, 17.0);
        double t2 = oracle::uniform(0.0, 17.0);
        if (t0 > t1) std::swap(t0, t1);
        if (t1 > t2) std::swap(t1, t2);
        if (t0 > t1) std::swap(t0, t1);
        const double whole = retardation_length(tab, t0, t2);
        const double parts = retardation_length(tab, t0, t1) + retardation_length(tab, t1, t2);
        REQUIRE(whole >= -1e-12 * (1.0 + std::abs(whole)));
        REQUIRE_THAT(parts, WithinAbs(whole, 1e-12 * (1.0 + std::abs(whole))));
    }
}

TEST_CASE("advance_time lands where the displacement budget runs out", "[retardation]") {
    const auto tab = fig2_storing_table();
    // inside the plateau: speed 100, budget 50 -> half a time unit
    const double t1 = tab.advance_time(2.0, 50.0, 10.0);
    CHECK_THAT(t1, WithinRel(2.5, 1e-12));
    CHECK_THAT(retardation_length(tab, 2.0, t1), WithinRel(50.0, 1e-9));
    // beyond the turn-off the budget is never met
    CHECK(tab.advance_time(11.2, 1.0, 15.0) == 15.0);
}

TEST_CASE("retardation table rejects out-of-domain queries", "[retardation]") {
    const auto tab = fig2_storing_table();
    CHECK_THROWS_AS(tab.phi(-0.5), std::invalid_argument);
    CHECK_THROWS_AS(tab.phi(100.0), std::invalid_argument);
    CHECK_THROWS_AS(retardation_length(tab, 2.0, 1.0), std::invalid_argument);
}
