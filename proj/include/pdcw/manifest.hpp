#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdcw/errors.hpp"
#include "pdcw/serialize.hpp"
#include "pdcw/version.hpp"

namespace pdcw {

/// FNV-1a 64-bit over a byte sequence; integrity record, not cryptographic.
inline std::uint64_t fnv1a64(const char* data, std::size_t len) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read back output file '" + path + "'");
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const auto n = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
        if (in.eof()) break;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Reproducibility record written next to every output file: config
/// snapshot, grid settings, tool version, timestamp and a checksum per
/// output.
struct RunManifest {
    std::string command;
    ProcessConfig config;
    std::string config_path;
    GridSettings grid;
    std::vector<std::string> outputs;
};

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Write `<first output>.manifest.json`. Outputs must already exist; their
/// checksums are taken from the bytes on disk.
inline std::string write_manifest(const RunManifest& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& path : m.outputs) {
        std::ifstream probe(path, std::ios::binary | std::ios::ate);
        if (!probe) throw IoError("manifest: missing output file '" + path + "'");
        const auto bytes = static_cast<std::uint64_t>(probe.tellg());
        entries.push_back(
            {{"path", path}, {"bytes", bytes}, {"checksum_fnv1a64", hex64(fnv1a64_file(path))}});
    }
    nlohmann::json j = {
        {"tool", "pdcw"},
        {"version", kVersion},
        {"created_utc", utc_timestamp()},
        {"command", m.command},
        {"config_path", m.config_path},
        {"config", to_json(m.config)},
        {"grid", {{"n", m.grid.n}, {"window_sigmas", m.grid.window_sigmas}}},
        {"outputs", entries},
    };
    const std::string path = m.outputs.empty() ? "pdcw.manifest.json" : m.outputs.front() + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest '" + path + "'");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing manifest '" + path + "'");
    return path;
}

}  // namespace pdcw
