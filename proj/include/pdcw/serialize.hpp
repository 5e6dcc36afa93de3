#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pdcw/analysis.hpp"
#include "pdcw/process.hpp"
#include "pdcw/wigner.hpp"

namespace pdcw {

inline nlohmann::json to_json(const ProcessConfig& cfg) {
    return {
        {"pump_central_wavelength_nm", cfg.pump_central_wavelength_nm},
        {"signal_central_wavelength_nm", cfg.signal_central_wavelength_nm},
        {"idler_central_wavelength_nm", cfg.idler_central_wavelength_nm},
        {"pump_fwhm_nm", cfg.pump_fwhm_nm},
        {"chirp_fs2", cfg.chirp_fs2},
        {"crystal_length_mm", cfg.crystal_length_mm},
        {"gamma", cfg.gamma},
        {"n_g_pump", cfg.n_g_pump},
        {"n_g_signal", cfg.n_g_signal},
        {"n_g_idler", cfg.n_g_idler},
    };
}

/// {coords, M (row-major), b, logN}
inline nlohmann::json to_json(const GaussianForm& form) {
    std::vector<std::string> coords;
    for (Coord c : form.coords) coords.emplace_back(coord_name(c));
    std::vector<double> m;
    m.reserve(form.dim() * form.dim());
    for (int i = 0; i < form.dim(); ++i)
        for (int j = 0; j < form.dim(); ++j) m.push_back(form.M(i, j));
    std::vector<double> b(form.b.data(), form.b.data() + form.b.size());
    return {{"coords", coords}, {"M", m}, {"b", b}, {"logN", form.logN}};
}

inline nlohmann::json to_json(const EntanglementSummary& s) {
    return {
        {"k_jsa", s.k_jsa},
        {"k_jsi", s.k_jsi},
        {"ictbp", s.ictbp},
        {"tbp_conditioned", s.tbp_conditioned},
        {"tbp_unconditioned", s.tbp_unconditioned},
        {"schmidt_lambdas", s.schmidt_lambdas},
        {"grid", {{"n", s.grid.n}, {"window", {s.window.half1, s.window.half2}}}},
    };
}

inline nlohmann::json to_json(const std::vector<CheckResult>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        arr.push_back({{"name", c.name},
                       {"pass", c.pass},
                       {"measured", c.measured},
                       {"tolerance", c.tolerance},
                       {"detail", c.detail}});
    }
    return {{"pass", all_pass}, {"checks", arr}};
}

}  // namespace pdcw
