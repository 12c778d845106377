#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "eitstore/config.hpp"
#include "eitstore/errors.hpp"
#include "eitstore/grid.hpp"

namespace eitstore {

struct SnapshotMeta {
    std::string quantity = "coherence"; // probe_field | new_field | coherence
    std::string source = "numeric";     // numeric | analytic
    int stage = 1;
    double t = 0.0;
    int nx = 0, ny = 0;
    double dx = 0.0, dy = 0.0;
    std::string units = "t in T, x and y in x0, fields in 1/T";
    double x0_cm = 0.0; // physical annotations; 0 = absent
    double T_s = 0.0;

    bool operator==(const SnapshotMeta&) const = default;
};

// Plain-text grid file: '#'-prefixed header carrying the metadata, then ny
// rows of nx space-separated values (row j holds y = j*dy). %.17g keeps the
// round trip exact and the bytes reproducible.
inline void write_snapshot(std::ostream& os, const Grid2D& g, const SnapshotMeta& meta) {
    using detail::fmt;
    os << "# eitstore grid snapshot\n";
    os << "# quantity = " << meta.quantity << "\n";
    os << "# source = " << meta.source << "\n";
    os << "# stage = " << meta.stage << "\n";
    os << "# t = " << fmt(meta.t) << "\n";
    os << "# nx = " << g.nx << "\n";
    os << "# ny = " << g.ny << "\n";
    os << "# dx = " << fmt(g.dx) << "\n";
    os << "# dy = " << fmt(g.dy) << "\n";
    os << "# units = " << meta.units << "\n";
    if (meta.x0_cm > 0.0) os << "# x0_cm = " << fmt(meta.x0_cm) << "\n";
    if (meta.T_s > 0.0) os << "# T_s = " << fmt(meta.T_s) << "\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i) os << ' ';
            os << fmt(g.at(i, j));
        }
        os << '\n';
    }
    if (!os) throw std::runtime_error("snapshot write failed");
}

inline SnapshotMeta read_snapshot(std::istream& is, Grid2D& g) {
    SnapshotMeta meta;
    std::string line;
    int lineno = 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = detail::trim(std::string_view(line).substr(1, eq - 1));
            const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
            if (key == "quantity") meta.quantity = value;
            else if (key == "source") meta.source = value;
            else if (key == "stage") meta.stage = detail::parse_int(value, lineno);
            else if (key == "t") meta.t = detail::parse_number(value, lineno);
            else if (key == "nx") meta.nx = detail::parse_int(value, lineno);
            else if (key == "ny") meta.ny = detail::parse_int(value, lineno);
            else if (key == "dx") meta.dx = detail::parse_number(value, lineno);
            else if (key == "dy") meta.dy = detail::parse_number(value, lineno);
            else if (key == "units") meta.units = value;
            else if (key == "x0_cm") meta.x0_cm = detail::parse_number(value, lineno);
            else if (key == "T_s") meta.T_s = detail::parse_number(value, lineno);
            continue;
        }
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && line[pos] == ' ') ++pos;
            if (pos >= line.size()) break;
            std::size_t used = 0;
            row.push_back(std::stod(line.substr(pos), &used));
            pos += used;
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (meta.nx < 2 || meta.ny < 1 || int(rows.size()) != meta.ny)
        throw ConfigError("snapshot data does not match its header");
    for (const auto& r : rows)
        if (int(r.size()) != meta.nx) throw ConfigError("snapshot row length mismatch");
    g = Grid2D::zeros(meta.nx, meta.ny, meta.dx > 0 ? meta.dx : 1.0, meta.dy > 0 ? meta.dy : 1.0);
    g.dx = meta.dx;
    g.dy = meta.dy;
    for (int j = 0; j < meta.ny; ++j)
        for (int i = 0; i < meta.nx; ++i) g.at(i, j) = rows[std::size_t(j)][std::size_t(i)];
    return meta;
}

namespace detail {

inline bool host_little_endian() {
    const std::uint32_t probe = 1;
    unsigned char b;
    std::memcpy(&b, &probe, 1);
    return b == 1;
}

inline void put_bytes(std::ostream& os, const void* p, std::size_t n) {
    os.write(static_cast<const char*>(p), std::streamsize(n));
}

template <typename T>
void put_value(std::ostream& os, T v) {
    put_bytes(os, &v, sizeof v);
}

template <typename T>
T get_value(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

inline void put_tag(std::ostream& os, const std::string& s) {
    char buf[16] = {};
    std::snprintf(buf, sizeof buf, "%s", s.c_str());
    put_bytes(os, buf, sizeof buf);
}

inline std::string get_tag(std::istream& is) {
    char buf[16] = {};
    is.read(buf, sizeof buf);
    buf[15] = '\0';
    return buf;
}

} // namespace detail

// Fixed-layout little-endian alternative for large grids: magic "EITGRIDB",
// u32 version, i32 stage, i64 nx, i64 ny, f64 t, dx, dy, 16-byte quantity and
// source tags, then nx*ny row-major f64 values.
inline void write_snapshot_binary(std::ostream& os, const Grid2D& g, const SnapshotMeta& meta) {
    if (!detail::host_little_endian())
        throw std::runtime_error("binary snapshots require a little-endian host");
    detail::put_bytes(os, "EITGRIDB", 8);
    detail::put_value<std::uint32_t>(os, 1);
    detail::put_value<std::int32_t>(os, meta.stage);
    detail::put_value<std::int64_t>(os, g.nx);
    detail::put_value<std::int64_t>(os, g.ny);
    detail::put_value<double>(os, meta.t);
    detail::put_value<double>(os, g.dx);
    detail::put_value<double>(os, g.dy);
    detail::put_tag(os, meta.quantity);
    detail::put_tag(os, meta.source);
    detail::put_bytes(os, g.v.data(), g.v.size() * sizeof(double));
    if (!os) throw std::runtime_error("snapshot write failed");
}

inline SnapshotMeta read_snapshot_binary(std::istream& is, Grid2D& g) {
    if (!detail::host_little_endian())
        throw std::runtime_error("binary snapshots require a little-endian host");
    char magic[8];
    is.read(magic, 8);
    if (std::memcmp(magic, "EITGRIDB", 8) != 0) throw ConfigError("not a binary snapshot file");
    if (detail::get_value<std::uint32_t>(is) != 1) throw ConfigError("unsupported snapshot version");
    SnapshotMeta meta;
    meta.stage = detail::get_value<std::int32_t>(is);
    const auto nx = detail::get_value<std::int64_t>(is);
    const auto ny = detail::get_value<std::int64_t>(is);
    meta.t = detail::get_value<double>(is);
    meta.dx = detail::get_value<double>(is);
    meta.dy = detail::get_value<double>(is);
    meta.quantity = detail::get_tag(is);
    meta.source = detail::get_tag(is);
    if (nx < 2 || ny < 1 || nx > (1 << 20) || ny > (1 << 20))
        throw ConfigError("implausible binary snapshot dimensions");
    meta.nx = int(nx);
    meta.ny = int(ny);
    g = Grid2D::zeros(meta.nx, meta.ny, meta.dx, meta.dy);
    is.read(reinterpret_cast<char*>(g.v.data()), std::streamsize(g.v.size() * sizeof(double)));
    if (!is) throw ConfigError("truncated binary snapshot");
    return meta;
}

// FNV-1a 64-bit, used for the run manifest.
inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t k = 0; k < n; ++k) {
        h ^= p[k];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64(buf.data(), buf.size());
}

// Manifest: the resolved configuration as commented lines, then one
// `<fnv1a64-hex>  <filename>` line per emitted file.
inline void write_manifest(const std::filesystem::path& dir, const std::string& config_text,
                           const std::vector<std::string>& files,
                           const std::string& name = "run_manifest.txt") {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write manifest");
    os << "# eitstore run manifest\n# config:\n";
    std::istringstream cfg(config_text);
    std::string line;
    while (std::getline(cfg, line)) os << "#   " << line << "\n";
    os << "# files:\n";
    for (const auto& f : files) {
        char hex[20];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv1a64_file(dir / f)));
        os << hex << "  " << f << "\n";
    }
    if (!os) throw std::runtime_error("manifest write failed");
}

// Recomputes every checksum in a manifest; throws on the first mismatch or
// missing file.
inline void verify_manifest(const std::filesystem::path& dir,
                            const std::string& name = "run_manifest.txt") {
    std::ifstream is(dir / name);
    if (!is) throw std::runtime_error("cannot open manifest");
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line.front() == '#') continue;
        const auto sep = line.find("  ");
        if (sep == std::string::npos) throw ConfigError("malformed manifest line: " + line);
        const std::string hex = line.substr(0, sep);
        const std::string file = line.substr(sep + 2);
        const std::uint64_t want = std::stoull(hex, nullptr, 16);
        const std::uint64_t got = fnv1a64_file(dir / file);
        if (want != got)
            throw std::runtime_error("checksum mismatch for " + file);
    }
}

} // namespace eitstore
