#include <catch2/catch_amalgamated.hpp>

#include "eitstore/config.hpp"
#include "eitstore/solver.hpp"

using namespace eitstore;

TEST_CASE("empty config resolves to the fig2 defaults", "[config]") {
    const auto cfg = parse_config("");
    CHECK(cfg.scenario.storing.plateau == 10.0);
    CHECK(cfg.scenario.tau1 == 11.5);
    CHECK(cfg.solver.nx == 512);
    CHECK(cfg.solver.scheme == Scheme::lax_wendroff);
    CHECK(cfg.scenario.probe_product(2.5) == fig2_scenario().probe_product(2.5));
    CHECK(cfg.warnings.empty());
}

TEST_CASE("explicit preset request equals the defaults", "[config]") {
    const auto cfg = parse_config("scenario.preset = fig2\n");
    CHECK(print_config(cfg) == print_config(parse_config("")));
}

TEST_CASE("single-key override leaves everything else at defaults", "[config]") {
    const auto cfg = parse_config("solver.nx = 256\n");
    CHECK(cfg.solver.nx == 256);
    auto reference = parse_config("");
    reference.solver.nx = 256;
    CHECK(print_config(cfg) == print_config(reference));
}

TEST_CASE("parse and print round-trip is the identity", "[config]") {
    const std::string text =
        "scenario.tau1 = 12.25\n"
        "scenario.probe_terms = 0.5:2:1.5, 0.25:7:0.75\n"
        "scenario.profile_terms = 1:80:15\n"
        "solver.scheme = upwind\n"
        "solver.nx = 96\n"
        "solver.snapshots = 1, 5, 12.25, 14\n"
        "medium.c = inf\n"
        "output.dir = elsewhere\n"
        "oracle.gamma3 = 0.125\n";
    const auto cfg = parse_config(text);
    const std::string printed = print_config(cfg);
    const auto reparsed = parse_config(printed);
    CHECK(print_config(reparsed) == printed);
    CHECK(reparsed.scenario.tau1 == 12.25);
    CHECK(reparsed.solver.snapshot_times == std::vector<double>{1.0, 5.0, 12.25, 14.0});
    CHECK(reparsed.oracle.gamma3 == 0.125);
}

TEST_CASE("tau1 moves the retrieval gate with it", "[config]") {
    const auto cfg = parse_config("scenario.tau1 = 12.5\nscenario.t_max = 18\n");
    CHECK(cfg.scenario.retrieving.activation == 12.5);
    CHECK(eval_schedule(cfg.scenario.retrieving, 12.4) == 0.0);
}

TEST_CASE("misplaced retrieval edge parses but fails the regime check", "[config]") {
    const auto cfg = parse_config("scenario.tau1 = 10\nscenario.retrieving.edge = 8\n");
    const auto diags = validate_regime(cfg.scenario);
    bool hit = false;
    for (const auto& d : diags) hit = hit || d.code == "retrieval-before-handoff";
    CHECK(hit);
    CHECK_THROWS_AS(run_scenario(cfg.scenario, cfg.solver), RegimeError);
}

TEST_CASE("config errors carry line numbers", "[config]") {
    try {
        parse_config("solver.nx = 64\nsolver.cfl oops\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_config("solver.nx = twelve\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("solver.nx =\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario.probe_terms = 1:2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario.preset = fig3\n"), ConfigError);
}

TEST_CASE("unknown keys error in strict mode and warn otherwise", "[config]") {
    CHECK_THROWS_AS(parse_config("solver.nz = 4\n", /*strict=*/true), ConfigError);
    const auto cfg = parse_config("solver.nz = 4\n", /*strict=*/false);
    REQUIRE(cfg.warnings.size() == 1);
    CHECK(cfg.warnings[0].find("solver.nz") != std::string::npos);
}

TEST_CASE("structurally invalid scenarios are rejected at parse time", "[config]") {
    CHECK_THROWS_AS(parse_config("solver.cfl = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario.storing.width = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("scenario.t_max = 5\n"), ConfigError); // below tau1
    CHECK_THROWS_AS(parse_config("solver.snapshots = 3, 2\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored", "[config]") {
    const auto cfg = parse_config("# a comment\n\nsolver.nx = 80 # trailing\n");
    CHECK(cfg.solver.nx == 80);
}

TEST_CASE("zero probe via none keyword", "[config]") {
    const auto cfg = parse_config("scenario.probe_terms = none\n");
    CHECK(cfg.scenario.probe_product.max_value() == 0.0);
    const std::string printed = print_config(cfg);
    CHECK(printed.find("scenario.probe_terms = none") != std::string::npos);
}
