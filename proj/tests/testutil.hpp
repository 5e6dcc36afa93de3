#pragma once

#include <random>

#include "pdcw/pdcw.hpp"

namespace testutil {

inline pdcw::ProcessConfig shipped_symmetric() {
    return pdcw::load_config(std::string(PDCW_CONFIG_DIR) + "/ktp_symmetric.toml");
}

inline pdcw::ProcessConfig shipped_correlated() {
    return pdcw::load_config(std::string(PDCW_CONFIG_DIR) + "/ktp_correlated.toml");
}

/// Random physically valid config: exact central-frequency energy
/// conservation, non-degenerate group indices. Used for property tests.
inline pdcw::ProcessConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    pdcw::ProcessConfig cfg;
    cfg.pump_central_wavelength_nm = 400.0 + 600.0 * uni(rng);
    const double split = 0.35 + 0.3 * uni(rng);  // 1/lambda_s = split / lambda_p
    cfg.signal_central_wavelength_nm = cfg.pump_central_wavelength_nm / split;
    cfg.idler_central_wavelength_nm = cfg.pump_central_wavelength_nm / (1.0 - split);
    cfg.pump_fwhm_nm = 0.3 + 4.0 * uni(rng);
    cfg.chirp_fs2 = 0.0;
    cfg.crystal_length_mm = 5.0 + 40.0 * uni(rng);
    cfg.gamma = 0.2 + 1.2 * uni(rng);
    cfg.n_g_pump = 1.5 + 0.5 * uni(rng);
    // opposite-sign walk-offs keep the decorrelation point reachable and
    // |n_si| well away from the degeneracy cutoff
    const double nps = 1e-3 + 0.05 * uni(rng);
    const double npi = -(1e-3 + 0.05 * uni(rng));
    cfg.n_g_signal = cfg.n_g_pump - nps;
    cfg.n_g_idler = cfg.n_g_pump - npi;
    return cfg;
}

/// Direct transcription of the joint spectral amplitude as the product of
/// the chirped Gaussian pump envelope and the Gaussian phasematching term
/// with its group-delay phase. Independent oracle for build_jsa/eval_jsa.
inline std::complex<double> reference_jsa(const pdcw::DerivedParams& p, double a, double nu_s,
                                          double nu_i) {
    const double amp = std::exp(-(nu_s + nu_i) * (nu_s + nu_i) / (2.0 * p.sigma * p.sigma) -
                                p.gamma * p.l_over_c_fs * p.l_over_c_fs / 4.0 *
                                    (p.n_ps * nu_s + p.n_pi * nu_i) *
                                    (p.n_ps * nu_s + p.n_pi * nu_i));
    const double phase = -a * (nu_s + nu_i) * (nu_s + nu_i) +
                         0.5 * p.l_over_c_fs * (p.n_ps * nu_s + p.n_pi * nu_i);
    return amp * std::exp(std::complex<double>(0.0, phase));
}

}  // namespace testutil
