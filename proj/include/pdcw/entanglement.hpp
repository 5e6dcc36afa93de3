#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "pdcw/grid.hpp"
#include "pdcw/process.hpp"
#include "pdcw/wigner.hpp"

namespace pdcw {

/// Schmidt coefficients below this are dropped after normalization.
inline constexpr double kSchmidtTruncation = 1e-8;

struct GridMeta {
    int n1 = 0, n2 = 0;
    double half1 = 0.0, half2 = 0.0;  // window half-widths used for sampling
};

/// Normalized Schmidt coefficients, descending, sum of squares = 1.
struct SchmidtSpectrum {
    std::vector<double> lambdas;
    GridMeta grid;
};

namespace detail {

inline SchmidtSpectrum spectrum_from_singular_values(Eigen::VectorXd sv, GridMeta meta) {
    const double norm2 = sv.squaredNorm();
    if (!(norm2 > 0.0)) throw InvalidConfig("amplitude grid is identically zero");
    sv /= std::sqrt(norm2);
    SchmidtSpectrum spec;
    spec.grid = meta;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) < kSchmidtTruncation) break;  // singular values are descending
        spec.lambdas.push_back(sv(i));
    }
    if (spec.lambdas.empty()) spec.lambdas.push_back(1.0);
    return spec;
}

template <class Scalar>
GridMeta meta_of(const Grid2D<Scalar>& g) {
    GridMeta m;
    m.n1 = g.axis1.count;
    m.n2 = g.axis2.count;
    m.half1 = 0.5 * (g.axis1.max - g.axis1.min) + 0.5 * g.axis1.step();
    m.half2 = 0.5 * (g.axis2.max - g.axis2.min) + 0.5 * g.axis2.step();
    return m;
}

}  // namespace detail

/// Schmidt spectrum of a sampled joint amplitude: singular values of
/// F_jk = f(nu_s_j, nu_i_k) sqrt(h1 h2), normalized so sum lambda^2 = 1.
/// The sqrt-spacing weights make the singular values approximate the
/// continuous Schmidt coefficients.
inline SchmidtSpectrum schmidt_decompose(const Grid2D<std::complex<double>>& amplitude) {
    if (amplitude.axis1.count < 64 || amplitude.axis2.count < 64)
        throw InvalidConfig("Schmidt decomposition needs >= 64 samples per axis");
    Eigen::MatrixXcd F(amplitude.axis1.count, amplitude.axis2.count);
    const double w = std::sqrt(amplitude.axis1.step() * amplitude.axis2.step());
    for (int i = 0; i < amplitude.axis1.count; ++i)
        for (int j = 0; j < amplitude.axis2.count; ++j) F(i, j) = amplitude.at(i, j) * w;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(F);
    return detail::spectrum_from_singular_values(svd.singularValues(), detail::meta_of(amplitude));
}

/// Cooperativity K = 1 / sum lambda_n^4: the effective number of entangled
/// mode pairs. K = 1 iff the joint amplitude is separable.
inline double cooperativity(const SchmidtSpectrum& spec) {
    double sum2 = 0.0, sum4 = 0.0;
    for (double l : spec.lambdas) {
        const double l2 = l * l;
        sum2 += l2;
        sum4 += l2 * l2;
    }
    // renormalize in case truncation removed tail mass
    return (sum2 * sum2) / sum4;
}

/// Cooperativity of the phase-blind amplitude sqrt(JSI): what intensity-only
/// spectral measurements can resolve.
inline double cooperativity_from_jsi(const Grid2D<double>& jsi) {
    double min_v = 0.0;
    for (double v : jsi.values) min_v = std::min(min_v, v);
    if (min_v < -1e-12)
        throw NegativeIntensity("JSI grid has a sample below the -1e-12 floor");
    Eigen::MatrixXd F(jsi.axis1.count, jsi.axis2.count);
    const double w = std::sqrt(jsi.axis1.step() * jsi.axis2.step());
    for (int i = 0; i < jsi.axis1.count; ++i)
        for (int j = 0; j < jsi.axis2.count; ++j)
            F(i, j) = std::sqrt(std::max(jsi.at(i, j), 0.0)) * w;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(F);
    const auto spec = detail::spectrum_from_singular_values(svd.singularValues(), detail::meta_of(jsi));
    return cooperativity(spec);
}

/// Closed-form inverse conditioned time-bandwidth product:
/// sqrt( (n_pi^2 + n_ps^2)/n_si^2
///     + gamma L^2 sigma^2 n_pi^2 n_ps^2 / (2 c^2 n_si^2)
///     + 2 c^2 (1 + 4 a^2 sigma^4) / (gamma L^2 sigma^2 n_si^2) ).
/// Equals 1 exactly at the unchirped decorrelation point and grows with
/// spectral-temporal correlation.
inline double ictbp_closed_form(const DerivedParams& p, double chirp_fs2) {
    if (std::abs(p.n_si) < kDegeneracyEpsilon)
        throw DegenerateGroupVelocity("|n_si| below degeneracy cutoff");
    if (!(p.sigma > 0.0)) throw InvalidConfig("sigma must be positive");
    const double s2 = p.sigma * p.sigma;
    const double loc2 = p.l_over_c_fs * p.l_over_c_fs;  // (L/c)^2
    const double nsi2 = p.n_si * p.n_si;
    const double a = chirp_fs2;
    const double term1 = (p.n_pi * p.n_pi + p.n_ps * p.n_ps) / nsi2;
    const double term2 = p.gamma * loc2 * s2 * p.n_pi * p.n_pi * p.n_ps * p.n_ps / (2.0 * nsi2);
    const double term3 = 2.0 * (1.0 + 4.0 * a * a * s2 * s2) / (p.gamma * loc2 * s2 * nsi2);
    return std::sqrt(term1 + term2 + term3);
}

/// Time-bandwidth product of a 2-D (nu, tau) form from its marginal widths:
/// TBP = 2 sigma_nu sigma_tau. The constant fixes the convention so a
/// Fourier-limited Gaussian gives exactly 1.
inline double tbp_from_moments(const GaussianForm& spwf) {
    if (spwf.dim() != 2) throw std::invalid_argument("tbp_from_moments needs a 2-D form");
    const Moments m = moments(spwf);
    return 2.0 * std::sqrt(m.covariance(0, 0) * m.covariance(1, 1));
}

}  // namespace pdcw
