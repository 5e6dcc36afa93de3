#pragma once

#include <cmath>
#include <numbers>

// Internal unit system: angular frequency in rad/fs, time in fs, length in
// um. Keeps exponents of order unity for fs pulses and mm-scale crystals.

namespace pdcw {

/// Speed of light in um/fs.
inline constexpr double kSpeedOfLight = 0.299792458;

/// 2*sqrt(ln 2): ratio between the intensity FWHM and the amplitude width
/// of a Gaussian exp(-x^2 / 2 s^2) whose intensity is exp(-x^2 / s^2).
inline const double kFwhmToSigma = 2.0 * std::sqrt(std::numbers::ln2);

/// Central angular frequency (rad/fs) of a vacuum wavelength in nm.
inline double omega_from_wavelength_nm(double lambda_nm) {
    return 2.0 * std::numbers::pi * kSpeedOfLight / (lambda_nm * 1e-3);
}

/// Pump amplitude width sigma (rad/fs) from the intensity FWHM of the pump
/// spectrum in nm. The wavelength width maps to angular frequency via
/// d_omega = 2 pi c d_lambda / lambda^2.
inline double sigma_from_pump_fwhm_nm(double fwhm_nm, double lambda_p_nm) {
    const double dl_um = fwhm_nm * 1e-3;
    const double lp_um = lambda_p_nm * 1e-3;
    const double fwhm_omega = 2.0 * std::numbers::pi * kSpeedOfLight * dl_um / (lp_um * lp_um);
    return fwhm_omega / kFwhmToSigma;
}

/// Inverse of sigma_from_pump_fwhm_nm.
inline double pump_fwhm_nm_from_sigma(double sigma, double lambda_p_nm) {
    const double lp_um = lambda_p_nm * 1e-3;
    const double fwhm_omega = sigma * kFwhmToSigma;
    return fwhm_omega * lp_um * lp_um / (2.0 * std::numbers::pi * kSpeedOfLight) * 1e3;
}

}  // namespace pdcw
