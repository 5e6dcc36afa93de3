#pragma once

#include <Eigen/Dense>
#include <complex>
#include <unsupported/Eigen/FFT>

#include "pdcw/grid.hpp"
#include "pdcw/process.hpp"

// Fourier convention, fixed project-wide: time-domain amplitudes are
// f~(tau) = (1/2pi) integral f(nu) exp(-i nu tau) d nu per axis, and the
// Wigner transform uses the matching exp(+i omega tau) kernel (wigner.hpp).

namespace pdcw {

/// Joint spectral amplitude over v = (nu_s, nu_i) as the exponent of a
/// complex quadratic form:
///   f(v) = exp(-v'Av) * exp(i(-v'Cv + d'v)),
/// A positive definite (units (rad/fs)^-2), C the chirp block (fs^2),
/// d the group-delay phase slope (fs). |f| peaks at 1 for v = 0.
struct ComplexGaussian2D {
    Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
    Eigen::Matrix2d C = Eigen::Matrix2d::Zero();
    Eigen::Vector2d d = Eigen::Vector2d::Zero();
};

/// Assemble the quadratic form of the pulsed-pump Gaussian JSA:
///   A = uu'/(2 sigma^2) + (gamma L^2 / 4 c^2) ww',  u = (1,1), w = (n_ps, n_pi)
///   C = a uu',  d = (L / 2c) w
inline ComplexGaussian2D build_jsa(const DerivedParams& p, double chirp_fs2) {
    if (!(p.sigma > 0.0)) throw InvalidConfig("sigma must be positive");
    if (std::abs(p.n_si) < kDegeneracyEpsilon)
        throw DegenerateGroupVelocity("|n_si| below degeneracy cutoff");
    const Eigen::Vector2d u(1.0, 1.0);
    const Eigen::Vector2d w(p.n_ps, p.n_pi);
    ComplexGaussian2D jsa;
    jsa.A = u * u.transpose() / (2.0 * p.sigma * p.sigma) +
            (p.gamma * p.l_over_c_fs * p.l_over_c_fs / 4.0) * w * w.transpose();
    jsa.C = chirp_fs2 * u * u.transpose();
    jsa.d = 0.5 * p.l_over_c_fs * w;
    return jsa;
}

inline std::complex<double> eval_jsa(const ComplexGaussian2D& jsa, double nu_s, double nu_i) {
    const Eigen::Vector2d v(nu_s, nu_i);
    const double re = -v.dot(jsa.A * v);
    const double im = -v.dot(jsa.C * v) + jsa.d.dot(v);
    return std::exp(std::complex<double>(re, im));
}

/// Per-axis half-widths of a sampling window in rad/fs.
struct Window2 {
    double half1 = 0.0;
    double half2 = 0.0;
};

/// Marginal standard deviations of the intensity |f|^2 = exp(-2 v'Av),
/// i.e. of a Gaussian with covariance (4A)^-1.
inline Eigen::Vector2d jsi_marginal_sigmas(const ComplexGaussian2D& jsa) {
    const Eigen::Matrix2d cov = (4.0 * jsa.A).inverse();
    if (!(cov(0, 0) > 0.0) || !(cov(1, 1) > 0.0))
        throw InvalidConfig("JSA exponent matrix A is not positive definite");
    return cov.diagonal().cwiseSqrt();
}

/// Window of `sigmas` marginal standard deviations of |f|^2 per axis.
inline Window2 auto_window(const ComplexGaussian2D& jsa, double sigmas = 4.0) {
    const Eigen::Vector2d s = jsi_marginal_sigmas(jsa);
    return {sigmas * s(0), sigmas * s(1)};
}

namespace detail {

inline void require_window(const ComplexGaussian2D& jsa, const Window2& win) {
    const Eigen::Vector2d s = jsi_marginal_sigmas(jsa);
    if (win.half1 < 2.0 * s(0) || win.half2 < 2.0 * s(1))
        throw WindowTooSmall("sampling window covers fewer than 2 marginal standard deviations");
}

inline bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace detail

/// Sample the complex JSA on an origin-centered window.
inline Grid2D<std::complex<double>> sample_jsa(const ComplexGaussian2D& jsa, const Window2& win,
                                               int n) {
    if (n < 16) throw InvalidConfig("grid size must be >= 16");
    detail::require_window(jsa, win);
    auto g = make_grid<std::complex<double>>(
        make_centered_axis(0.0, win.half1, n, "nu_s", "rad/fs"),
        make_centered_axis(0.0, win.half2, n, "nu_i", "rad/fs"));
    for (int i = 0; i < n; ++i) {
        const double vs = g.axis1.coord(i);
        for (int j = 0; j < n; ++j) g.at(i, j) = eval_jsa(jsa, vs, g.axis2.coord(j));
    }
    return g;
}

/// Sample the joint spectral intensity |f|^2. The phase blocks C and d drop
/// out, so the grid is chirp-independent.
inline Grid2D<double> sample_jsi(const ComplexGaussian2D& jsa, const Window2& win, int n) {
    if (n < 16) throw InvalidConfig("grid size must be >= 16");
    detail::require_window(jsa, win);
    auto g = make_grid<double>(make_centered_axis(0.0, win.half1, n, "nu_s", "rad/fs"),
                               make_centered_axis(0.0, win.half2, n, "nu_i", "rad/fs"));
    for (int i = 0; i < n; ++i) {
        const double vs = g.axis1.coord(i);
        for (int j = 0; j < n; ++j) {
            const double vi = g.axis2.coord(j);
            const Eigen::Vector2d v(vs, vi);
            g.at(i, j) = std::exp(-2.0 * v.dot(jsa.A * v));
        }
    }
    return g;
}

/// Joint temporal intensity |f~(tau_s, tau_i)|^2 via a 2-D DFT of the
/// sampled JSA. Axes come from the DFT frequency theorem:
/// tau_k = 2 pi (k - n/2) / (n h) per axis, and the continuum scaling is
/// f~ = DFT * h1 h2 / (2 pi)^2 (the absorbed boundary phase has unit
/// modulus). Serves as the intensity-level oracle for the Wigner time
/// marginal.
inline Grid2D<double> sample_jti_fft(const ComplexGaussian2D& jsa, const Window2& win, int n) {
    if (!detail::is_pow2(n) || n < 64)
        throw InvalidConfig("JTI grid size must be a power of two >= 64");
    detail::require_window(jsa, win);
    const auto f = sample_jsa(jsa, win, n);

    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = f.at(i, j);

    Eigen::FFT<double> fft;
    Eigen::VectorXcd buf(n), out(n);
    for (int i = 0; i < n; ++i) {
        buf = m.row(i).transpose();
        fft.fwd(out, buf);
        m.row(i) = out.transpose();
    }
    for (int j = 0; j < n; ++j) {
        buf = m.col(j);
        fft.fwd(out, buf);
        m.col(j) = out;
    }

    const double h1 = f.axis1.step(), h2 = f.axis2.step();
    const double tau_half1 = std::numbers::pi / h1;
    const double tau_half2 = std::numbers::pi / h2;
    auto g = make_grid<double>(make_centered_axis(0.0, tau_half1, n, "tau_s", "fs"),
                               make_centered_axis(0.0, tau_half2, n, "tau_i", "fs"));
    const double scale = h1 * h2 / (4.0 * std::numbers::pi * std::numbers::pi);
    // index p of the tau grid maps to DFT bin (p + n/2) mod n (fftshift)
    for (int p = 0; p < n; ++p) {
        const int ip = (p + n / 2) % n;
        for (int q = 0; q < n; ++q) {
            const int jq = (q + n / 2) % n;
            g.at(p, q) = std::norm(m(ip, jq) * scale);
        }
    }
    return g;
}

}  // namespace pdcw
