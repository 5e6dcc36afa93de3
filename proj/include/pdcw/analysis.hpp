#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "pdcw/entanglement.hpp"
#include "pdcw/jsa.hpp"
#include "pdcw/log.hpp"
#include "pdcw/process.hpp"
#include "pdcw/wigner.hpp"

namespace pdcw {

inline constexpr std::array<Coord, 2> kSignalCoords{Coord::nu_s, Coord::tau_s};
inline constexpr std::array<Coord, 2> kIdlerCoords{Coord::nu_i, Coord::tau_i};
inline constexpr std::array<Coord, 2> kFrequencyCoords{Coord::nu_s, Coord::nu_i};
inline constexpr std::array<Coord, 2> kTimeCoords{Coord::tau_s, Coord::tau_i};

/// One record of a pump-bandwidth sweep.
struct SweepRow {
    double pump_fwhm_nm = 0.0;
    double sigma = 0.0;  // rad/fs
    double ictbp = 0.0;
    double k_jsa = 0.0;
    double k_jsi = 0.0;
    double tbp_unconditioned = 0.0;
    bool ok = false;
    std::string error;
};

struct GridSettings {
    int n = 256;
    double window_sigmas = 4.0;
};

/// Unconditioned signal SPWF: idler coordinates integrated out.
inline GaussianForm unconditioned_spwf(const GaussianForm& wigner4d) {
    return marginalize(wigner4d, kIdlerCoords);
}

/// Conditioned signal SPWF: idler frequency offset and arrival time fixed.
inline GaussianForm conditioned_spwf(const GaussianForm& wigner4d, double nu_i0 = 0.0,
                                     double tau_i0 = 0.0) {
    const std::array<std::pair<Coord, double>, 2> fix{
        std::pair{Coord::nu_i, nu_i0}, std::pair{Coord::tau_i, tau_i0}};
    return condition(wigner4d, fix);
}

/// Evaluate one sweep point at the given pump FWHM.
inline SweepRow sweep_point(ProcessConfig cfg, double pump_fwhm_nm,
                            std::optional<double> chirp_override, const GridSettings& grid) {
    SweepRow row;
    row.pump_fwhm_nm = pump_fwhm_nm;
    try {
        cfg.pump_fwhm_nm = pump_fwhm_nm;
        if (chirp_override) cfg.chirp_fs2 = *chirp_override;
        const DerivedParams p = derive_params(cfg);
        row.sigma = p.sigma;
        const ComplexGaussian2D jsa = build_jsa(p, cfg.chirp_fs2);
        const Window2 win = auto_window(jsa, grid.window_sigmas);
        row.k_jsa = cooperativity(schmidt_decompose(sample_jsa(jsa, win, grid.n)));
        row.k_jsi = cooperativity_from_jsi(sample_jsi(jsa, win, grid.n));
        row.ictbp = ictbp_closed_form(p, cfg.chirp_fs2);
        row.tbp_unconditioned = tbp_from_moments(unconditioned_spwf(wigner_of_gaussian_jsa(jsa)));
        row.ok = true;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

struct SweepOptions {
    double from_nm = 0.0;
    double to_nm = 0.0;
    int steps = 0;
    std::optional<double> chirp_fs2;  // overrides the config chirp when set
    GridSettings grid;
    int jobs = 1;
};

/// Logarithmically spaced pump-FWHM sweep. Rows are independent; with
/// jobs > 1 they are computed concurrently and assembled in order.
inline std::vector<SweepRow> run_sweep(const ProcessConfig& cfg, const SweepOptions& opt) {
    if (!(opt.from_nm > 0.0) || !(opt.from_nm < opt.to_nm) || opt.steps < 2)
        throw InvalidConfig("sweep needs 0 < from < to and steps >= 2");
    std::vector<double> fwhm(opt.steps);
    const double ratio = opt.to_nm / opt.from_nm;
    for (int i = 0; i < opt.steps; ++i)
        fwhm[i] = opt.from_nm * std::pow(ratio, static_cast<double>(i) / (opt.steps - 1));

    std::vector<SweepRow> rows(opt.steps);
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        for (int i = 0; i < opt.steps; ++i)
            rows[i] = sweep_point(cfg, fwhm[i], opt.chirp_fs2, opt.grid);
        return rows;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < opt.steps; i = next.fetch_add(1))
            rows[i] = sweep_point(cfg, fwhm[i], opt.chirp_fs2, opt.grid);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, opt.steps); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

/// Entanglement figures of one configuration on one grid.
struct EntanglementSummary {
    double k_jsa = 0.0;
    double k_jsi = 0.0;
    double ictbp = 0.0;
    double tbp_conditioned = 0.0;
    double tbp_unconditioned = 0.0;
    std::vector<double> schmidt_lambdas;  // first 16
    GridSettings grid;
    Window2 window;
};

inline EntanglementSummary summarize_entanglement(const ProcessConfig& cfg,
                                                  const GridSettings& grid) {
    const DerivedParams p = derive_params(cfg);
    const ComplexGaussian2D jsa = build_jsa(p, cfg.chirp_fs2);
    const Window2 win = auto_window(jsa, grid.window_sigmas);
    EntanglementSummary s;
    s.grid = grid;
    s.window = win;
    const SchmidtSpectrum spec = schmidt_decompose(sample_jsa(jsa, win, grid.n));
    s.k_jsa = cooperativity(spec);
    s.k_jsi = cooperativity_from_jsi(sample_jsi(jsa, win, grid.n));
    s.ictbp = ictbp_closed_form(p, cfg.chirp_fs2);
    const GaussianForm wig = wigner_of_gaussian_jsa(jsa);
    s.tbp_conditioned = tbp_from_moments(conditioned_spwf(wig));
    s.tbp_unconditioned = tbp_from_moments(unconditioned_spwf(wig));
    const std::size_t keep = std::min<std::size_t>(16, spec.lambdas.size());
    s.schmidt_lambdas.assign(spec.lambdas.begin(), spec.lambdas.begin() + keep);
    return s;
}

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;   // the figure compared against the tolerance
    double tolerance = 0.0;
    std::string detail;
};

namespace detail {

/// Deterministic phase-space points with Mahalanobis distance <= radius of
/// the form's own Gaussian, where the Wigner function is meaningfully
/// nonzero.
inline std::vector<Eigen::VectorXd> sample_phase_space(const GaussianForm& form, int count,
                                                       double radius, std::uint64_t seed) {
    const Moments m = moments(form);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.covariance);
    const Eigen::MatrixXd half =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXd xi(form.dim());
        for (int i = 0; i < form.dim(); ++i) xi(i) = uni(rng);
        const double norm = xi.norm();
        if (norm > 1.0) xi /= norm;
        pts.push_back(m.mean + half * (radius * xi));
    }
    return pts;
}

inline double rel_diff(double x, double ref) {
    return std::abs(x - ref) / std::max(std::abs(ref), 1e-300);
}

}  // namespace detail

struct ValidationOptions {
    GridSettings grid;
    int oracle_points = 20;
    QuadSpec quad;
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
    bool corrupt_analytic = false;  // fault injection for self-testing
};

/// Oracle cross-checks: both Wigner construction paths against each other
/// and against the brute-force transform, marginal consistency, grid
/// normalization, and the consistency triangle
/// ICTBP = 1/TBP_conditioned = K_JSA.
inline std::vector<CheckResult> run_validation(const ProcessConfig& cfg,
                                               const ValidationOptions& opt = {}) {
    std::vector<CheckResult> checks;
    const DerivedParams p = derive_params(cfg);
    const double a = cfg.chirp_fs2;
    const ComplexGaussian2D jsa = build_jsa(p, a);
    GaussianForm analytic = analytic_wigner(p, a);
    const GaussianForm transform = wigner_of_gaussian_jsa(jsa);
    if (opt.corrupt_analytic) {
        analytic.M(1, 3) *= 1.01;
        analytic.M(3, 1) = analytic.M(1, 3);
        analytic.M(3, 3) *= 1.002;
        analytic.normalize();
        log_info("fault injection: analytic Wigner coefficients corrupted");
    }

    {  // construction-path coefficient agreement, compared after Jacobi
       // equilibration so every block carries the same dimensionless scale
        Eigen::VectorXd d = transform.M.diagonal().cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXd dm =
            d.asDiagonal() * (analytic.M - transform.M) * d.asDiagonal();
        const Eigen::VectorXd db = d.asDiagonal() * (analytic.b - transform.b);
        const double measured = std::max(dm.cwiseAbs().maxCoeff(), db.cwiseAbs().maxCoeff());
        checks.push_back({"analytic_vs_transform_coefficients", measured <= 1e-9, measured, 1e-9,
                          "max deviation of the equilibrated (M, b) coefficients between the "
                          "closed-form transcription and the derived Gaussian Wigner transform"});
    }

    {  // both paths against the quadrature oracle
        const double norm2 = jsa_norm_squared_quad(jsa, opt.quad);
        const auto pts = detail::sample_phase_space(transform, opt.oracle_points, 2.0, opt.seed);
        double worst = 0.0, worst_imag = 0.0;
        for (const auto& z : pts) {
            const OracleResult orc =
                numeric_wigner_oracle(jsa, z(0), z(1), z(2), z(3), opt.quad);
            const double reference = orc.value / norm2;
            worst = std::max(worst, detail::rel_diff(analytic.eval(z), reference));
            worst = std::max(worst, detail::rel_diff(transform.eval(z), reference));
            worst_imag = std::max(worst_imag, orc.imag_residue / std::abs(orc.value));
        }
        checks.push_back({"analytic_vs_oracle_values", worst <= 1e-6, worst, 1e-6,
                          "worst relative deviation of both construction paths from the "
                          "quadrature oracle at Mahalanobis-bounded points"});
        checks.push_back({"oracle_imaginary_residue", worst_imag <= 1e-9, worst_imag, 1e-9,
                          "largest |imag|/|value| of the Wigner quadrature"});
    }

    {  // frequency marginal against |f|^2 (pointwise ratio constancy)
        const GaussianForm freq = marginalize(analytic, kTimeCoords);
        const auto pts = detail::sample_phase_space(freq, 40, 2.5, opt.seed + 1);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& z : pts) {
            const double ratio = freq.eval(z) / std::norm(eval_jsa(jsa, z(0), z(1)));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        const double measured = hi / lo - 1.0;
        checks.push_back({"frequency_marginal_vs_jsi", measured <= 1e-9, measured, 1e-9,
                          "spread of W_marginal / |f|^2 over sampled points"});
    }

    {  // time marginal against the FFT-based JTI; the window is wider than
       // the default so truncation ringing stays below the tolerance
        const GaussianForm timef = marginalize(analytic, kFrequencyCoords);
        const int n = opt.grid.n;
        const Grid2D<double> jti = sample_jti_fft(jsa, auto_window(jsa, 7.0), n);
        double peak = 0.0;
        for (double v : jti.values) peak = std::max(peak, v);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        Eigen::VectorXd z(2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (jti.at(i, j) < 1e-3 * peak) continue;
                z << jti.axis1.coord(i), jti.axis2.coord(j);
                const double ratio = jti.at(i, j) / timef.eval(z);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        const double measured = hi / lo - 1.0;
        checks.push_back({"time_marginal_vs_jti_fft", measured <= 1e-4, measured, 1e-4,
                          "spread of JTI_fft / W_marginal over samples above 1e-3 peak"});
    }

    {  // unit integral by brute-force grid integration
        const Moments m = moments(analytic);
        const int n4 = 48;
        const Eigen::Vector4d sd = m.covariance.diagonal().cwiseSqrt();
        double sum = 0.0;
        Eigen::VectorXd z(4);
        const double half = 6.0;
        const Eigen::Vector4d h = 2.0 * half * sd / n4;
        for (int i0 = 0; i0 < n4; ++i0) {
            z(0) = m.mean(0) + (i0 - n4 / 2 + 0.5) * h(0);
            for (int i1 = 0; i1 < n4; ++i1) {
                z(1) = m.mean(1) + (i1 - n4 / 2 + 0.5) * h(1);
                for (int i2 = 0; i2 < n4; ++i2) {
                    z(2) = m.mean(2) + (i2 - n4 / 2 + 0.5) * h(2);
                    for (int i3 = 0; i3 < n4; ++i3) {
                        z(3) = m.mean(3) + (i3 - n4 / 2 + 0.5) * h(3);
                        sum += analytic.eval(z);
                    }
                }
            }
        }
        const double integral = sum * h.prod();
        const double measured = std::abs(integral - 1.0);
        checks.push_back({"normalization_grid_integral", measured <= 1e-4, measured, 1e-4,
                          "|1 - integral| of the normalized 4-D form over a 6-sigma box"});
    }

    {  // consistency triangle
        const GridSettings grid = opt.grid;
        const Window2 win = auto_window(jsa, grid.window_sigmas);
        const double k_jsa = cooperativity(schmidt_decompose(sample_jsa(jsa, win, grid.n)));
        const double ictbp = ictbp_closed_form(p, a);
        const double dev_k = detail::rel_diff(ictbp, k_jsa);
        checks.push_back({"ictbp_vs_k_jsa", dev_k <= 0.02, dev_k, 0.02,
                          "relative deviation between the closed-form ICTBP and the "
                          "Schmidt-number cooperativity of the sampled JSA"});

        const GaussianForm cond = conditioned_spwf(analytic);
        if (a == 0.0) {
            const double inv_tbp = 1.0 / tbp_from_moments(cond);
            const double dev = detail::rel_diff(inv_tbp, ictbp);
            checks.push_back({"ictbp_vs_conditioned_tbp", dev <= 1e-9, dev, 1e-9,
                              "closed form against the moments route 1/(2 s_nu s_tau)"});
        } else {
            // With chirp the conditioned form is tilted in (nu, tau); the
            // closed form equals the inverse phase-space area
            // 1/(2 sqrt(det cov)), not the product of marginal widths.
            const Moments mc = moments(cond);
            const double inv_area = 1.0 / (2.0 * std::sqrt(mc.covariance.determinant()));
            const double dev = detail::rel_diff(inv_area, ictbp);
            checks.push_back({"ictbp_vs_conditioned_area", dev <= 1e-9, dev, 1e-9,
                              "closed form against the conditioned phase-space area route"});
        }
    }

    {  // conditioning invariance: covariance independent of the fixed point
        const GaussianForm c0 = conditioned_spwf(analytic, 0.0, 0.0);
        const Eigen::Vector2d s = jsi_marginal_sigmas(jsa);
        const Moments m4 = moments(analytic);
        const GaussianForm c1 =
            conditioned_spwf(analytic, 1.5 * s(1), m4.mean(3) + 40.0);
        const double measured = (moments(c0).covariance - moments(c1).covariance)
                                    .cwiseAbs()
                                    .maxCoeff() /
                                moments(c0).covariance.cwiseAbs().maxCoeff();
        checks.push_back({"conditioning_point_invariance", measured <= 1e-12, measured, 1e-12,
                          "relative change of the conditioned covariance when the fixed "
                          "idler point moves"});
    }

    return checks;
}

}  // namespace pdcw
