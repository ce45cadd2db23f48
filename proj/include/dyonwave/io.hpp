// io.hpp - snapshot, probe and report writers
//
// Snapshots: raw little-endian float64 samples (x fastest, components one
// after another) plus a JSON sidecar describing the layout.

#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dyonwave/grid.hpp"

namespace dyonwave {

using Json = nlohmann::ordered_json;

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void ensureDirectory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw OutputError("cannot create output directory '" + dir.string() + "': " + ec.message());
    const auto probe = dir / ".write-test";
    {
        std::ofstream f(probe);
        if (!f) throw OutputError("output directory '" + dir.string() + "' is not writable");
    }
    std::filesystem::remove(probe, ec);
}

inline std::ofstream openOutput(const std::filesystem::path& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw OutputError("cannot open '" + path.string() + "' for writing");
    return f;
}

/// Shortest round-trip decimal form of a double.
inline std::string formatDouble(double x) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

inline void writeJson(const std::filesystem::path& path, const Json& j) {
    auto f = openOutput(path);
    f << j.dump(2) << '\n';
}

/// CSV with a header line; every value written in round-trip form.
inline void writeCsv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    auto f = openOutput(path);
    for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
    f << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << formatDouble(r[i]);
        f << '\n';
    }
}

namespace detail {

inline void writeLittleEndian(std::ostream& os, double x) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::string utcTimestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline Json sidecar(const std::string& name, const Grid& g, Stagger s, int components, double t) {
    Json j;
    j["field"] = name;
    j["extents"] = {g.n[0], g.n[1], g.n[2]};
    j["spacing"] = g.h;
    j["boundary"] = toString(g.bc);
    j["placement"] = toString(s);
    j["components"] = components;
    j["time"] = t;
    j["dtype"] = "float64-le";
    j["order"] = "x-fastest, component-major";
    j["written_at"] = utcTimestamp();
    return j;
}

} // namespace detail

/// Writes <dir>/<name>.bin and <dir>/<name>.json.
inline void writeSnapshot(const std::filesystem::path& dir, const std::string& name, const RealScalar& f, double t) {
    auto os = openOutput(dir / (name + ".bin"), true);
    for (double x : f.data()) detail::writeLittleEndian(os, x);
    writeJson(dir / (name + ".json"), detail::sidecar(name, f.grid(), f.stagger(), 1, t));
}

inline void writeSnapshot(const std::filesystem::path& dir, const std::string& name, const RealVector& f, double t) {
    auto os = openOutput(dir / (name + ".bin"), true);
    for (int a = 0; a < 3; ++a)
        for (double x : f[a]) detail::writeLittleEndian(os, x);
    writeJson(dir / (name + ".json"), detail::sidecar(name, f.grid(), f.stagger(), 3, t));
}

} // namespace dyonwave
