#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace pdcw;
using Catch::Approx;

namespace {

ComplexGaussian2D shipped_jsa(double chirp = 0.0) {
    const DerivedParams p = derive_params(testutil::shipped_symmetric());
    return build_jsa(p, chirp);
}

}  // namespace

TEST_CASE("zero chirp gives a zero phase-curvature block") {
    const ComplexGaussian2D jsa = shipped_jsa(0.0);
    CHECK(jsa.C.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("amplitude peaks at exactly one at zero offsets") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const DerivedParams p = derive_params(testutil::random_config(rng));
        const ComplexGaussian2D jsa = build_jsa(p, (i % 2) ? 2e5 : 0.0);
        const auto v = eval_jsa(jsa, 0.0, 0.0);
        CHECK(v.real() == 1.0);
        CHECK(v.imag() == 0.0);
    }
}

TEST_CASE("quadratic form reproduces the direct transcription at random points") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int c = 0; c < 5; ++c) {
        const ProcessConfig cfg = testutil::random_config(rng);
        const DerivedParams p = derive_params(cfg);
        const double a = (c % 2) ? 3e5 : 0.0;
        const ComplexGaussian2D jsa = build_jsa(p, a);
        const Eigen::Vector2d s = jsi_marginal_sigmas(jsa);
        for (int i = 0; i < 100; ++i) {
            const double vs = 3.0 * s(0) * uni(rng);
            const double vi = 3.0 * s(1) * uni(rng);
            const auto got = eval_jsa(jsa, vs, vi);
            const auto ref = testutil::reference_jsa(p, a, vs, vi);
            CHECK(std::abs(got - ref) <= 1e-12 * std::abs(ref));
        }
    }
}

TEST_CASE("modulus of the amplitude is independent of chirp") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const DerivedParams p = derive_params(testutil::shipped_symmetric());
    const ComplexGaussian2D j0 = build_jsa(p, 0.0);
    const ComplexGaussian2D j1 = build_jsa(p, 3e5);
    const Eigen::Vector2d s = jsi_marginal_sigmas(j0);
    for (int i = 0; i < 200; ++i) {
        const double vs = 4.0 * s(0) * uni(rng);
        const double vi = 4.0 * s(1) * uni(rng);
        const double m0 = std::abs(eval_jsa(j0, vs, vi));
        const double m1 = std::abs(eval_jsa(j1, vs, vi));
        CHECK(m1 == Approx(m0).epsilon(1e-15).margin(0.0));
    }
}

TEST_CASE("unchirped phase equals the group-delay linear term") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const DerivedParams p = derive_params(testutil::shipped_correlated());
    const ComplexGaussian2D jsa = build_jsa(p, 0.0);
    const Eigen::Vector2d s = jsi_marginal_sigmas(jsa);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Vector2d v(2.0 * s(0) * uni(rng), 2.0 * s(1) * uni(rng));
        const auto f = eval_jsa(jsa, v(0), v(1));
        const double expected = jsa.d.dot(v);
        // compare phases on the unit circle to avoid branch-cut bookkeeping
        const std::complex<double> expected_phase(std::cos(expected), std::sin(expected));
        CHECK(std::abs(f / std::abs(f) - expected_phase) <= 1e-12);
    }
}

TEST_CASE("off-diagonal of A vanishes at the decorrelation condition") {
    const DerivedParams p = derive_params(testutil::shipped_symmetric());
    const ComplexGaussian2D jsa = build_jsa(p, 0.0);
    CHECK(std::abs(jsa.A(0, 1)) <= 1e-12 * std::abs(jsa.A(0, 0)));
}

TEST_CASE("auto_window is symmetric and scales as 1/sqrt(s) for isotropic A") {
    ComplexGaussian2D iso;
    iso.A = 3.0 * Eigen::Matrix2d::Identity();
    const Window2 w1 = auto_window(iso);
    CHECK(w1.half1 == Approx(w1.half2).epsilon(1e-15));
    iso.A *= 4.0;  // scaling A by s shrinks widths by sqrt(s)
    const Window2 w2 = auto_window(iso);
    CHECK(w2.half1 == Approx(0.5 * w1.half1).epsilon(1e-14));
}

TEST_CASE("auto_window captures at least 99.9% of the JSI mass") {
    for (const auto& cfg : {testutil::shipped_symmetric(), testutil::shipped_correlated()}) {
        const ComplexGaussian2D jsa = build_jsa(derive_params(cfg), 0.0);
        const Window2 win = auto_window(jsa);
        const Grid2D<double> jsi = sample_jsi(jsa, win, 256);
        const double mass = grid_stats(jsi).mass;
        const Grid2D<double> wide = sample_jsi(jsa, auto_window(jsa, 10.0), 1024);
        const double total = grid_stats(wide).mass;
        CHECK(mass / total >= 0.999);
    }
}

TEST_CASE("JSI of the decorrelated config has zero Pearson correlation") {
    const ComplexGaussian2D jsa = shipped_jsa();
    const Grid2D<double> jsi = sample_jsi(jsa, auto_window(jsa), 256);
    CHECK(std::abs(grid_stats(jsi).pearson) <= 0.01);
}

TEST_CASE("JSI grids are pointwise identical with and without chirp") {
    const ComplexGaussian2D j0 = shipped_jsa(0.0);
    const ComplexGaussian2D j1 = shipped_jsa(3e5);
    const Window2 win = auto_window(j0);
    const Grid2D<double> g0 = sample_jsi(j0, win, 128);
    const Grid2D<double> g1 = sample_jsi(j1, win, 128);
    for (std::size_t k = 0; k < g0.values.size(); ++k)
        CHECK(std::abs(g1.values[k] - g0.values[k]) <= 1e-12 * g0.values[k]);
}

TEST_CASE("JSI sample at the origin is exactly one") {
    const ComplexGaussian2D jsa = shipped_jsa();
    const Grid2D<double> jsi = sample_jsi(jsa, auto_window(jsa), 64);
    CHECK(jsi.at(32, 32) == 1.0);  // centered grids contain the origin at n/2
    CHECK(grid_stats(jsi).peak == 1.0);
}

TEST_CASE("window and grid-size preconditions are enforced") {
    const ComplexGaussian2D jsa = shipped_jsa();
    const Eigen::Vector2d s = jsi_marginal_sigmas(jsa);
    CHECK_THROWS_AS(sample_jsi(jsa, Window2{1.5 * s(0), 4.0 * s(1)}, 64), WindowTooSmall);
    CHECK_THROWS_AS(sample_jsi(jsa, auto_window(jsa), 8), InvalidConfig);
    CHECK_THROWS_AS(sample_jti_fft(jsa, auto_window(jsa), 100), InvalidConfig);  // not pow2
    CHECK_THROWS_AS(sample_jti_fft(jsa, auto_window(jsa), 32), InvalidConfig);
}

TEST_CASE("JTI of the decorrelated config shows no temporal correlation") {
    const ComplexGaussian2D jsa = shipped_jsa();
    const Grid2D<double> jti = sample_jti_fft(jsa, auto_window(jsa, 6.0), 256);
    CHECK(std::abs(grid_stats(jti).pearson) <= 0.02);
}

TEST_CASE("anti-correlated spectrum gives positively correlated arrival times") {
    const ComplexGaussian2D jsa = build_jsa(derive_params(testutil::shipped_correlated()), 0.0);
    const Grid2D<double> jsi = sample_jsi(jsa, auto_window(jsa), 256);
    CHECK(grid_stats(jsi).pearson < -0.9);
    const Grid2D<double> jti = sample_jti_fft(jsa, auto_window(jsa, 6.0), 256);
    CHECK(grid_stats(jti).pearson > 0.5);
}

TEST_CASE("JTI mass equals JSI mass after Parseval normalization") {
    for (double chirp : {0.0, 3e5}) {
        const ComplexGaussian2D jsa = shipped_jsa(chirp);
        const Window2 win = auto_window(jsa, 5.0);
        const double jsi_mass = grid_stats(sample_jsi(jsa, win, 256)).mass;
        const double jti_mass = grid_stats(sample_jti_fft(jsa, win, 256)).mass;
        const double twopi2 = 4.0 * std::numbers::pi * std::numbers::pi;
        CHECK(jti_mass * twopi2 == Approx(jsi_mass).epsilon(1e-6));
    }
}

TEST_CASE("JTI is real and non-negative everywhere") {
    const ComplexGaussian2D jsa = shipped_jsa(3e5);
    const Grid2D<double> jti = sample_jti_fft(jsa, auto_window(jsa, 5.0), 128);
    for (double v : jti.values) CHECK(v >= -1e-12);
}

TEST_CASE("JTI centroid sits at the group-delay offset") {
    // the arrival-time centroid reflects the signal/idler group-velocity
    // walk-off over half the crystal
    const DerivedParams p = derive_params(testutil::shipped_symmetric());
    const ComplexGaussian2D jsa = build_jsa(p, 0.0);
    const Grid2D<double> jti = sample_jti_fft(jsa, auto_window(jsa, 6.0), 256);
    const GridStats st = grid_stats(jti);
    const double tau_s_expected = 0.5 * p.l_over_c_fs * p.n_ps;
    const double tau_i_expected = 0.5 * p.l_over_c_fs * p.n_pi;
    CHECK(st.mean1 == Approx(tau_s_expected).epsilon(1e-3));
    CHECK(st.mean2 == Approx(tau_i_expected).epsilon(1e-3));
}

TEST_CASE("doubling grid resolution changes the JSI mass below 1e-6 relative") {
    const ComplexGaussian2D jsa = shipped_jsa();
    const Window2 win = auto_window(jsa);
    const double m1 = grid_stats(sample_jsi(jsa, win, 256)).mass;
    const double m2 = grid_stats(sample_jsi(jsa, win, 512)).mass;
    CHECK(std::abs(m2 - m1) <= 1e-6 * m1);
}

TEST_CASE("CSV export uses the documented layout") {
    auto g = make_grid<double>(make_centered_axis(0.0, 1.0, 2, "nu_s", "rad/fs"),
                               make_centered_axis(0.0, 1.0, 2, "nu_i", "rad/fs"));
    g.at(0, 0) = 0.5;
    g.at(1, 1) = 2.0;
    std::ostringstream out;
    write_csv(g, out);
    const std::string text = out.str();
    CHECK(text.rfind("axis1,axis2,value\n", 0) == 0);
    CHECK(text.find("2.00000000e+00") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);

    auto gc = make_grid<std::complex<double>>(g.axis1, g.axis2);
    gc.at(0, 1) = {1.0, -2.0};
    std::ostringstream outc;
    write_csv(gc, outc);
    CHECK(outc.str().rfind("axis1,axis2,re,im\n", 0) == 0);
    CHECK(outc.str().find("-2.00000000e+00") != std::string::npos);
}
