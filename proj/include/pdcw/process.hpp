#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pdcw/errors.hpp"
#include "pdcw/units.hpp"

namespace pdcw {

/// Physical parameters of the PDC process and its pump, in laboratory units.
struct ProcessConfig {
    double pump_central_wavelength_nm = 0.0;
    double signal_central_wavelength_nm = 0.0;
    double idler_central_wavelength_nm = 0.0;
    double pump_fwhm_nm = 0.0;     // intensity FWHM of the pump spectrum
    double chirp_fs2 = 0.0;        // quadratic spectral phase of the pump
    double crystal_length_mm = 0.0;
    double gamma = 1.0;            // Gaussian phasematching width parameter
    double n_g_pump = 0.0;
    double n_g_signal = 0.0;
    double n_g_idler = 0.0;
};

/// Group-index offsets and internal-unit quantities derived from a config.
struct DerivedParams {
    double sigma = 0.0;       // pump amplitude width, rad/fs
    double n_ps = 0.0;        // n_g_pump - n_g_signal
    double n_pi = 0.0;        // n_g_pump - n_g_idler
    double n_si = 0.0;        // n_g_signal - n_g_idler
    double l_over_c_fs = 0.0; // crystal length over speed of light, fs
    double gamma = 1.0;
};

/// Below this cutoff on |n_si| the first-order walk-off model is invalid
/// (degenerate type-I regime) and the analytic forms are rejected.
inline constexpr double kDegeneracyEpsilon = 1e-6;

/// Relative tolerance on 1/lambda_p = 1/lambda_s + 1/lambda_i.
inline constexpr double kEnergyConservationTol = 1e-9;

struct Diagnostic {
    enum class Severity { warning, error };
    Severity severity;
    std::string code;
    std::string message;
};

/// Structured validation: hard errors for invariant violations, a warning
/// when the central frequencies violate energy conservation (only unit
/// conversion and reporting depend on the central values).
inline std::vector<Diagnostic> validate_config(const ProcessConfig& cfg) {
    std::vector<Diagnostic> diags;
    auto error = [&](const std::string& code, const std::string& msg) {
        diags.push_back({Diagnostic::Severity::error, code, msg});
    };

    auto positive = [&](double v, const std::string& name) {
        if (!(v > 0.0) || !std::isfinite(v))
            error("InvalidConfig", name + " must be positive and finite, got " + std::to_string(v));
    };
    positive(cfg.pump_central_wavelength_nm, "pump_central_wavelength_nm");
    positive(cfg.signal_central_wavelength_nm, "signal_central_wavelength_nm");
    positive(cfg.idler_central_wavelength_nm, "idler_central_wavelength_nm");
    positive(cfg.pump_fwhm_nm, "pump_fwhm_nm");
    positive(cfg.crystal_length_mm, "crystal_length_mm");
    positive(cfg.gamma, "gamma");
    if (!std::isfinite(cfg.chirp_fs2))
        error("InvalidConfig", "chirp_fs2 must be finite");
    for (double n : {cfg.n_g_pump, cfg.n_g_signal, cfg.n_g_idler})
        if (!std::isfinite(n))
            error("InvalidConfig", "group indices must be finite");

    const double n_si = cfg.n_g_signal - cfg.n_g_idler;
    if (std::isfinite(n_si) && std::abs(n_si) < kDegeneracyEpsilon)
        error("DegenerateGroupVelocity",
              "|n_g_signal - n_g_idler| = " + std::to_string(std::abs(n_si)) +
                  " is below the degeneracy cutoff 1e-6; the first-order model is invalid");

    if (cfg.pump_central_wavelength_nm > 0 && cfg.signal_central_wavelength_nm > 0 &&
        cfg.idler_central_wavelength_nm > 0) {
        const double lhs = 1.0 / cfg.pump_central_wavelength_nm;
        const double rhs = 1.0 / cfg.signal_central_wavelength_nm + 1.0 / cfg.idler_central_wavelength_nm;
        if (std::abs(lhs - rhs) > kEnergyConservationTol * std::abs(lhs))
            diags.push_back({Diagnostic::Severity::warning, "EnergyConservation",
                             "central wavelengths violate 1/lambda_p = 1/lambda_s + 1/lambda_i "
                             "beyond 1e-9 relative; offsets are unaffected, unit conversion and "
                             "reporting use the stated centrals"});
    }
    return diags;
}

/// Convert laboratory units to internal units and form the group-index
/// differences. Throws on any hard validation error.
inline DerivedParams derive_params(const ProcessConfig& cfg) {
    for (const auto& d : validate_config(cfg)) {
        if (d.severity != Diagnostic::Severity::error) continue;
        if (d.code == "DegenerateGroupVelocity") throw DegenerateGroupVelocity(d.message);
        throw InvalidConfig(d.message);
    }
    DerivedParams p;
    p.sigma = sigma_from_pump_fwhm_nm(cfg.pump_fwhm_nm, cfg.pump_central_wavelength_nm);
    p.n_ps = cfg.n_g_pump - cfg.n_g_signal;
    p.n_pi = cfg.n_g_pump - cfg.n_g_idler;
    p.n_si = cfg.n_g_signal - cfg.n_g_idler;
    p.l_over_c_fs = cfg.crystal_length_mm * 1e3 / kSpeedOfLight;
    p.gamma = cfg.gamma;
    return p;
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Parse a key=value config document (TOML-style flat table, '#' comments).
/// Required keys: the three central wavelengths, pump_fwhm_nm,
/// crystal_length_mm and the three group indices. gamma defaults to 1.0,
/// chirp_fs2 to 0.0. Unknown keys are a hard error.
inline ProcessConfig parse_config(std::istream& in, const std::string& origin = "<stream>") {
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidConfig(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        try {
            std::size_t used = 0;
            const double x = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            if (kv.count(key))
                throw InvalidConfig(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
            kv[key] = x;
        } catch (const InvalidConfig&) {
            throw;
        } catch (const std::exception&) {
            throw InvalidConfig(origin + ":" + std::to_string(lineno) + ": value for '" + key +
                                "' is not a number: '" + val + "'");
        }
    }

    ProcessConfig cfg;
    struct Field {
        const char* key;
        double* dst;
        bool required;
    };
    const Field fields[] = {
        {"pump_central_wavelength_nm", &cfg.pump_central_wavelength_nm, true},
        {"signal_central_wavelength_nm", &cfg.signal_central_wavelength_nm, true},
        {"idler_central_wavelength_nm", &cfg.idler_central_wavelength_nm, true},
        {"pump_fwhm_nm", &cfg.pump_fwhm_nm, true},
        {"chirp_fs2", &cfg.chirp_fs2, false},
        {"crystal_length_mm", &cfg.crystal_length_mm, true},
        {"gamma", &cfg.gamma, false},
        {"n_g_pump", &cfg.n_g_pump, true},
        {"n_g_signal", &cfg.n_g_signal, true},
        {"n_g_idler", &cfg.n_g_idler, true},
    };
    for (const auto& f : fields) {
        auto it = kv.find(f.key);
        if (it != kv.end()) {
            *f.dst = it->second;
            kv.erase(it);
        } else if (f.required) {
            throw InvalidConfig(origin + ": missing required key '" + std::string(f.key) + "'");
        }
    }
    if (!kv.empty())
        throw InvalidConfig(origin + ": unknown key '" + kv.begin()->first + "'");
    return cfg;
}

inline ProcessConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

}  // namespace pdcw
