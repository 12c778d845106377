#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eitstore/snapshot_io.hpp"
#include "oracle_helpers.hpp"

using namespace eitstore;
namespace fs = std::filesystem;

namespace {

Grid2D random_grid(int nx, int ny) {
    Grid2D g = Grid2D::zeros(nx, ny, 0.25, 0.5);
    for (auto& v : g.v) v = oracle::uniform(-2.0, 2.0);
    return g;
}

SnapshotMeta meta_for(const Grid2D& g) {
    SnapshotMeta m;
    m.quantity = "coherence";
    m.source = "numeric";
    m.stage = 2;
    m.t = 13.25;
    m.nx = g.nx;
    m.ny = g.ny;
    m.dx = g.dx;
    m.dy = g.dy;
    return m;
}

fs::path temp_dir(const char* name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("a 2x2 zero grid writes two rows of zeros", "[io]") {
    const Grid2D g = Grid2D::zeros(2, 2, 1.0, 1.0);
    std::ostringstream os;
    write_snapshot(os, g, meta_for(g));
    CHECK(os.str().ends_with("\n0 0\n0 0\n"));
}

TEST_CASE("text snapshot header and values round-trip exactly", "[io]") {
    const Grid2D g = random_grid(17, 9);
    const SnapshotMeta meta = meta_for(g);
    std::stringstream ss;
    write_snapshot(ss, g, meta);
    Grid2D back;
    const SnapshotMeta got = read_snapshot(ss, back);
    CHECK(got == meta);
    REQUIRE(back.same_shape(g));
    REQUIRE(std::memcmp(back.v.data(), g.v.data(), g.v.size() * sizeof(double)) == 0);
}

TEST_CASE("binary snapshot round-trips bit for bit", "[io]") {
    const Grid2D g = random_grid(33, 5);
    std::stringstream ss;
    write_snapshot_binary(ss, g, meta_for(g));
    Grid2D back;
    const SnapshotMeta got = read_snapshot_binary(ss, back);
    CHECK(got.quantity == "coherence");
    CHECK(got.t == 13.25);
    REQUIRE(back.same_shape(g));
    REQUIRE(std::memcmp(back.v.data(), g.v.data(), g.v.size() * sizeof(double)) == 0);
}

TEST_CASE("snapshot writes are byte-deterministic", "[io]") {
    const Grid2D g = random_grid(21, 13);
    std::ostringstream a, b;
    write_snapshot(a, g, meta_for(g));
    write_snapshot(b, g, meta_for(g));
    CHECK(a.str() == b.str());
}

TEST_CASE("truncated and corrupt snapshots are rejected", "[io]") {
    const Grid2D g = random_grid(6, 4);
    std::stringstream ss;
    write_snapshot(ss, g, meta_for(g));
    std::string text = ss.str();
    text.resize(text.size() - 8); // drop part of the last row
    std::istringstream in(text);
    Grid2D back;
    CHECK_THROWS_AS(read_snapshot(in, back), ConfigError);

    std::istringstream not_binary("this is not a grid");
    CHECK_THROWS_AS(read_snapshot_binary(not_binary, back), ConfigError);
}

TEST_CASE("fnv1a64 matches the reference vectors", "[io]") {
    CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar", 6) == 0x85944171f73967e8ull);
}

TEST_CASE("manifest verification catches tampering", "[io]") {
    const fs::path dir = temp_dir("eitstore_io_manifest");
    {
        std::ofstream f(dir / "a.txt", std::ios::binary);
        f << "payload one\n";
        std::ofstream h(dir / "b.txt", std::ios::binary);
        h << "payload two\n";
    }
    write_manifest(dir, "solver.nx = 2\n", {"a.txt", "b.txt"});
    CHECK_NOTHROW(verify_manifest(dir));
    {
        std::ofstream f(dir / "b.txt", std::ios::binary);
        f << "tampered\n";
    }
    CHECK_THROWS(verify_manifest(dir));
    fs::remove_all(dir);
}
