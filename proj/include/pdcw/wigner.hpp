#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdcw/jsa.hpp"
#include "pdcw/quadrature.hpp"

namespace pdcw {

enum class Coord { nu_s, nu_i, tau_s, tau_i };

inline const char* coord_name(Coord c) {
    switch (c) {
        case Coord::nu_s: return "nu_s";
        case Coord::nu_i: return "nu_i";
        case Coord::tau_s: return "tau_s";
        case Coord::tau_i: return "tau_i";
    }
    return "?";
}

/// Condition-number cutoff beyond which block inverses are refused.
inline constexpr double kConditionCutoff = 1e12;

/// Real Gaussian quasi-distribution W(z) = exp(logN - z'Mz + b'z) with M
/// positive definite. Carries the 4-D chronocyclic Wigner function over
/// (nu_s, nu_i, tau_s, tau_i) and, at dim 2, single-photon Wigner functions.
struct GaussianForm {
    Eigen::MatrixXd M;
    Eigen::VectorXd b;
    double logN = 0.0;
    std::vector<Coord> coords;

    int dim() const { return static_cast<int>(M.rows()); }

    double log_eval(const Eigen::VectorXd& z) const { return logN - z.dot(M * z) + b.dot(z); }
    double eval(const Eigen::VectorXd& z) const { return std::exp(log_eval(z)); }

    /// Set logN so the form integrates to one:
    /// logN = (1/2) log det M - (dim/2) log pi - b'M^-1 b / 4.
    void normalize() {
        Eigen::LLT<Eigen::MatrixXd> llt(M);
        if (llt.info() != Eigen::Success)
            throw SingularBlock("form matrix M is not positive definite");
        double half_logdet = 0.0;
        for (int i = 0; i < dim(); ++i) half_logdet += std::log(llt.matrixL()(i, i));
        const Eigen::VectorXd Minv_b = llt.solve(b);
        logN = half_logdet - 0.5 * dim() * std::log(std::numbers::pi) - 0.25 * b.dot(Minv_b);
    }
};

struct Moments {
    Eigen::VectorXd mean;        // M^-1 b / 2
    Eigen::MatrixXd covariance;  // M^-1 / 2
};

namespace detail {

// Condition check on the Jacobi-equilibrated block: coordinates carry mixed
// units (frequency vs time), so the raw condition number reflects unit scale
// rather than degeneracy. Equilibration makes the cutoff unit-invariant.
inline void require_condition(const Eigen::MatrixXd& block, const char* what) {
    const int n = static_cast<int>(block.rows());
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) {
        if (!(block(i, i) > 0.0))
            throw SingularBlock(std::string(what) + " block has a non-positive diagonal");
        d(i) = 1.0 / std::sqrt(block(i, i));
    }
    const Eigen::MatrixXd scaled = d.asDiagonal() * block * d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scaled, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    const double lo = ev(0), hi = ev(ev.size() - 1);
    if (!(lo > 0.0) || hi / lo > kConditionCutoff)
        throw SingularBlock(std::string(what) + " block is numerically singular (cond > 1e12)");
}

inline std::vector<int> coord_indices(const GaussianForm& form, std::span<const Coord> subset) {
    std::vector<int> idx;
    for (Coord c : subset) {
        auto it = std::find(form.coords.begin(), form.coords.end(), c);
        if (it == form.coords.end())
            throw std::invalid_argument(std::string("coordinate ") + coord_name(c) +
                                        " not present in form");
        idx.push_back(static_cast<int>(it - form.coords.begin()));
    }
    return idx;
}

}  // namespace detail

inline Moments moments(const GaussianForm& form) {
    detail::require_condition(form.M, "moments");
    Eigen::LLT<Eigen::MatrixXd> llt(form.M);
    Moments m;
    m.mean = 0.5 * llt.solve(form.b);
    m.covariance = 0.5 * llt.solve(Eigen::MatrixXd::Identity(form.dim(), form.dim()));
    return m;
}

/// Integrate out a subset of coordinates (Schur complement reduction):
///   M' = M_kk - M_kd M_dd^-1 M_dk,  b' = b_k - M_kd M_dd^-1 b_d,
/// renormalized to unit integral.
inline GaussianForm marginalize(const GaussianForm& form, std::span<const Coord> drop) {
    if (drop.empty() || drop.size() >= static_cast<std::size_t>(form.dim()))
        throw std::invalid_argument("marginalize: drop must be a nonempty proper subset");
    const std::vector<int> di = detail::coord_indices(form, drop);
    std::vector<int> ki;
    for (int i = 0; i < form.dim(); ++i)
        if (std::find(di.begin(), di.end(), i) == di.end()) ki.push_back(i);

    const int nk = static_cast<int>(ki.size()), nd = static_cast<int>(di.size());
    Eigen::MatrixXd Mkk(nk, nk), Mkd(nk, nd), Mdd(nd, nd);
    Eigen::VectorXd bk(nk), bd(nd);
    for (int i = 0; i < nk; ++i) {
        bk(i) = form.b(ki[i]);
        for (int j = 0; j < nk; ++j) Mkk(i, j) = form.M(ki[i], ki[j]);
        for (int j = 0; j < nd; ++j) Mkd(i, j) = form.M(ki[i], di[j]);
    }
    for (int i = 0; i < nd; ++i) {
        bd(i) = form.b(di[i]);
        for (int j = 0; j < nd; ++j) Mdd(i, j) = form.M(di[i], di[j]);
    }
    detail::require_condition(Mdd, "marginalize");

    Eigen::LLT<Eigen::MatrixXd> llt(Mdd);
    GaussianForm out;
    out.M = Mkk - Mkd * llt.solve(Mkd.transpose());
    out.b = bk - Mkd * llt.solve(bd);
    for (int i : ki) out.coords.push_back(form.coords[i]);
    out.normalize();
    return out;
}

/// Restrict the form to a slice with the given coordinates fixed, then
/// renormalize. The covariance of the slice is M_kk^-1/2, independent of
/// the fixed values.
inline GaussianForm condition(const GaussianForm& form,
                              std::span<const std::pair<Coord, double>> fix) {
    if (fix.empty() || fix.size() >= static_cast<std::size_t>(form.dim()))
        throw std::invalid_argument("condition: fix must be a nonempty proper subset");
    std::vector<Coord> fixed_coords;
    Eigen::VectorXd y0(fix.size());
    for (std::size_t i = 0; i < fix.size(); ++i) {
        fixed_coords.push_back(fix[i].first);
        y0(static_cast<int>(i)) = fix[i].second;
    }
    const std::vector<int> di = detail::coord_indices(form, fixed_coords);
    std::vector<int> ki;
    for (int i = 0; i < form.dim(); ++i)
        if (std::find(di.begin(), di.end(), i) == di.end()) ki.push_back(i);

    const int nk = static_cast<int>(ki.size()), nd = static_cast<int>(di.size());
    Eigen::MatrixXd Mkk(nk, nk), Mkd(nk, nd);
    Eigen::VectorXd bk(nk);
    for (int i = 0; i < nk; ++i) {
        bk(i) = form.b(ki[i]);
        for (int j = 0; j < nk; ++j) Mkk(i, j) = form.M(ki[i], ki[j]);
        for (int j = 0; j < nd; ++j) Mkd(i, j) = form.M(ki[i], di[j]);
    }
    GaussianForm out;
    out.M = Mkk;
    out.b = bk - 2.0 * Mkd * y0;
    for (int i : ki) out.coords.push_back(form.coords[i]);
    out.normalize();
    return out;
}

/// Exact Wigner transform of the complex Gaussian JSA
/// f = exp(-v'(A+iC)v + i d'v) under the project kernel
/// W = (2pi)^-2 int d2w e^{i w.tau} f(nu - w/2) f*(nu + w/2):
/// completing the square in w gives a real Gaussian with blocks
///   M_nn = 2A + 2 C A^-1 C,  M_tt = A^-1/2,  M_nt = C A^-1,
///   b = (2 C A^-1 d, A^-1 d).
/// This is the primary construction path; the transcription in
/// analytic_wigner is the cross-check.
inline GaussianForm wigner_of_gaussian_jsa(const ComplexGaussian2D& jsa) {
    Eigen::LLT<Eigen::Matrix2d> llt(jsa.A);
    if (llt.info() != Eigen::Success)
        throw InvalidConfig("JSA exponent matrix A is not positive definite");
    const Eigen::Matrix2d Ainv = llt.solve(Eigen::Matrix2d::Identity());
    const Eigen::Matrix2d CAinv = jsa.C * Ainv;

    GaussianForm w;
    w.M.resize(4, 4);
    w.M.topLeftCorner<2, 2>() = 2.0 * jsa.A + 2.0 * CAinv * jsa.C;
    w.M.topRightCorner<2, 2>() = CAinv;
    w.M.bottomLeftCorner<2, 2>() = CAinv.transpose();
    w.M.bottomRightCorner<2, 2>() = 0.5 * Ainv;
    w.b.resize(4);
    w.b.head<2>() = 2.0 * CAinv * jsa.d;
    w.b.tail<2>() = Ainv * jsa.d;
    w.coords = {Coord::nu_s, Coord::nu_i, Coord::tau_s, Coord::tau_i};
    w.normalize();
    return w;
}

/// Coefficient-wise transcription of the closed-form 4-D chronocyclic
/// Wigner function, normalized to unit integral. Under the project Fourier
/// convention the linear (tau_s - tau_i) term and the chirp cross block
/// carry the opposite sign from the tau-mirrored variant; the quadrature
/// oracle fixes the choice (see numeric_wigner_oracle).
inline GaussianForm analytic_wigner(const DerivedParams& p, double chirp_fs2) {
    if (std::abs(p.n_si) < kDegeneracyEpsilon)
        throw DegenerateGroupVelocity("|n_si| below degeneracy cutoff");
    const double sigma2 = p.sigma * p.sigma;
    const double loc = p.l_over_c_fs;  // L/c in fs
    const double g = p.gamma;
    const double a = chirp_fs2;
    const double nsi2 = p.n_si * p.n_si;

    const Eigen::Vector2d u(1.0, 1.0);                // nu_s + nu_i
    const Eigen::Vector2d w(p.n_ps, p.n_pi);          // n_ps nu_s + n_pi nu_i
    const Eigen::Vector2d pdiff(1.0, -1.0);           // tau_s - tau_i
    const Eigen::Vector2d q(p.n_pi, -p.n_ps);         // n_pi tau_s - n_ps tau_i

    GaussianForm wf;
    wf.M.setZero(4, 4);
    wf.M.topLeftCorner<2, 2>() = (1.0 / sigma2 + 4.0 * a * a * sigma2) * u * u.transpose() +
                                 (g * loc * loc / 2.0) * w * w.transpose();
    wf.M.bottomRightCorner<2, 2>() = (2.0 / (g * loc * loc * nsi2)) * pdiff * pdiff.transpose() +
                                     (sigma2 / nsi2) * q * q.transpose();
    const Eigen::Matrix2d cross = (2.0 * a * sigma2 / p.n_si) * u * q.transpose();
    wf.M.topRightCorner<2, 2>() = cross;
    wf.M.bottomLeftCorner<2, 2>() = cross.transpose();
    wf.b.setZero(4);
    wf.b.tail<2>() = (-2.0 / (g * loc * p.n_si)) * pdiff;
    wf.coords = {Coord::nu_s, Coord::nu_i, Coord::tau_s, Coord::tau_i};
    wf.normalize();
    return wf;
}

/// Quadrature controls for the brute-force Wigner transform.
struct QuadSpec {
    double half_range_sigmas = 6.0;  // per-axis half-range in amplitude sigmas
    int nodes = 256;                 // per-axis node count before doubling
    double rel_tol = 1e-6;           // convergence requirement on doubling
};

struct OracleResult {
    double value = 0.0;           // real part of the integral at 2x nodes
    double imag_residue = 0.0;    // |imag| at 2x nodes (zero for pure states)
    double doubling_change = 0.0; // relative change when nodes were doubled
};

namespace detail {

/// One tensor Gauss-Legendre pass over the Wigner integrand
///   (2pi)^-2 e^{i(w1 tau_s + w2 tau_i)} f(nu - w/2) f*(nu + w/2).
inline std::complex<double> wigner_quad_pass(const ComplexGaussian2D& jsa, double nu_s,
                                             double nu_i, double tau_s, double tau_i,
                                             double r1, double r2, int n) {
    const GaussLegendreRule rule = gauss_legendre(n);
    std::vector<std::complex<double>> col(n);
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const double w1 = rule.nodes[i] * r1;
        std::complex<double> row(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double w2 = rule.nodes[j] * r2;
            const std::complex<double> fm = eval_jsa(jsa, nu_s - 0.5 * w1, nu_i - 0.5 * w2);
            const std::complex<double> fp = eval_jsa(jsa, nu_s + 0.5 * w1, nu_i + 0.5 * w2);
            const double phase = w1 * tau_s + w2 * tau_i;
            row += rule.weights[j] *
                   (std::complex<double>(std::cos(phase), std::sin(phase)) * fm * std::conj(fp));
        }
        acc += rule.weights[i] * row;
    }
    const double pi = std::numbers::pi;
    return acc * (r1 * r2 / (4.0 * pi * pi));
}

}  // namespace detail

/// Brute-force evaluation of the Wigner transform at one phase-space point.
/// Serves as ground truth for both closed-form construction paths. The
/// integration half-range per axis is spec.half_range_sigmas amplitude
/// standard deviations of the w-envelope exp(-w'Aw/2), i.e. sqrt((A^-1)_jj).
inline OracleResult numeric_wigner_oracle(const ComplexGaussian2D& jsa, double nu_s, double nu_i,
                                          double tau_s, double tau_i, const QuadSpec& spec = {}) {
    if (spec.nodes < 2) throw InvalidConfig("quadrature needs >= 2 nodes");
    const Eigen::Matrix2d Ainv = jsa.A.inverse();
    const double r1 = spec.half_range_sigmas * std::sqrt(Ainv(0, 0));
    const double r2 = spec.half_range_sigmas * std::sqrt(Ainv(1, 1));

    const auto coarse = detail::wigner_quad_pass(jsa, nu_s, nu_i, tau_s, tau_i, r1, r2, spec.nodes);
    const auto fine = detail::wigner_quad_pass(jsa, nu_s, nu_i, tau_s, tau_i, r1, r2, 2 * spec.nodes);

    OracleResult res;
    res.value = fine.real();
    res.imag_residue = std::abs(fine.imag());
    const double denom = std::max(std::abs(fine.real()), 1e-300);
    res.doubling_change = std::abs(fine.real() - coarse.real()) / denom;
    if (res.doubling_change > spec.rel_tol)
        throw QuadratureNotConverged("Wigner quadrature changed by " +
                                     std::to_string(res.doubling_change) +
                                     " relative on node doubling");
    return res;
}

/// Quadrature value of ||f||^2 = int |f|^2 d2nu, used to put oracle values
/// on the same unit-integral footing as the normalized forms without
/// reusing the closed-form Gaussian algebra.
inline double jsa_norm_squared_quad(const ComplexGaussian2D& jsa, const QuadSpec& spec = {}) {
    const Eigen::Matrix2d Ainv = jsa.A.inverse();
    const double r1 = spec.half_range_sigmas * std::sqrt(Ainv(0, 0));
    const double r2 = spec.half_range_sigmas * std::sqrt(Ainv(1, 1));
    const GaussLegendreRule rule = gauss_legendre(spec.nodes);
    double acc = 0.0;
    for (int i = 0; i < spec.nodes; ++i) {
        const double vs = rule.nodes[i] * r1;
        double row = 0.0;
        for (int j = 0; j < spec.nodes; ++j) {
            const double vi = rule.nodes[j] * r2;
            row += rule.weights[j] * std::norm(eval_jsa(jsa, vs, vi));
        }
        acc += rule.weights[i] * row;
    }
    return acc * r1 * r2;
}

}  // namespace pdcw
