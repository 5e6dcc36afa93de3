#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace pdcw;

TEST_CASE("sigma conversion matches the frozen regression constant") {
    // 775 nm pump with 2 nm intensity FWHM:
    // sigma = 2 pi c (2e-3 um) / (0.775 um)^2 / (2 sqrt(ln 2)) rad/fs
    const double sigma = sigma_from_pump_fwhm_nm(2.0, 775.0);
    CHECK(sigma == Catch::Approx(0.0037669029891203016).epsilon(1e-14));
}

TEST_CASE("sigma is linear in the pump FWHM") {
    const double s1 = sigma_from_pump_fwhm_nm(1.3, 812.0);
    const double s2 = sigma_from_pump_fwhm_nm(2.6, 812.0);
    CHECK(s2 == Catch::Approx(2.0 * s1).epsilon(1e-15));
}

TEST_CASE("sigma round trip recovers the FWHM") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double fwhm = 0.1 + 10.0 * uni(rng);
        const double lp = 400.0 + 800.0 * uni(rng);
        const double back = pump_fwhm_nm_from_sigma(sigma_from_pump_fwhm_nm(fwhm, lp), lp);
        CHECK(back == Catch::Approx(fwhm).epsilon(1e-12));
    }
}

TEST_CASE("derive_params computes group-index differences and internal units") {
    const ProcessConfig cfg = testutil::shipped_symmetric();
    const DerivedParams p = derive_params(cfg);
    CHECK(p.n_ps == Catch::Approx(cfg.n_g_pump - cfg.n_g_signal).epsilon(1e-15));
    CHECK(p.n_pi == Catch::Approx(cfg.n_g_pump - cfg.n_g_idler).epsilon(1e-15));
    CHECK(p.n_si == Catch::Approx(cfg.n_g_signal - cfg.n_g_idler).epsilon(1e-15));
    CHECK(p.l_over_c_fs == Catch::Approx(25000.0 / kSpeedOfLight).epsilon(1e-15));
    CHECK(p.sigma == Catch::Approx(0.0037669029891203016).epsilon(1e-14));
}

TEST_CASE("n_ps - n_pi + n_si = 0 for random valid configs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const DerivedParams p = derive_params(testutil::random_config(rng));
        CHECK(std::abs(p.n_ps - p.n_pi + p.n_si) <= 1e-15);
        CHECK(p.sigma > 0.0);
    }
}

TEST_CASE("derive_params is deterministic") {
    const ProcessConfig cfg = testutil::shipped_correlated();
    const DerivedParams p1 = derive_params(cfg);
    const DerivedParams p2 = derive_params(cfg);
    CHECK(p1.sigma == p2.sigma);
    CHECK(p1.n_si == p2.n_si);
    CHECK(p1.l_over_c_fs == p2.l_over_c_fs);
}

TEST_CASE("equal group indices are rejected as degenerate") {
    ProcessConfig cfg = testutil::shipped_symmetric();
    cfg.n_g_idler = cfg.n_g_signal;
    CHECK_THROWS_AS(derive_params(cfg), DegenerateGroupVelocity);
    const auto diags = validate_config(cfg);
    REQUIRE_FALSE(diags.empty());
    CHECK(diags.front().code == "DegenerateGroupVelocity");
}

TEST_CASE("non-positive physical quantities are rejected") {
    ProcessConfig cfg = testutil::shipped_symmetric();
    cfg.crystal_length_mm = 0.0;
    CHECK_THROWS_AS(derive_params(cfg), InvalidConfig);
    bool has_error = false;
    for (const auto& d : validate_config(cfg))
        has_error = has_error || (d.severity == Diagnostic::Severity::error &&
                                  d.code == "InvalidConfig");
    CHECK(has_error);
}

TEST_CASE("valid shipped config produces no diagnostics") {
    CHECK(validate_config(testutil::shipped_symmetric()).empty());
    CHECK(validate_config(testutil::shipped_correlated()).empty());
}

TEST_CASE("energy-conservation mismatch is a warning, not an error") {
    ProcessConfig cfg = testutil::shipped_symmetric();
    cfg.signal_central_wavelength_nm = 1552.0;
    cfg.idler_central_wavelength_nm = 1552.0;  // 1/775 != 2/1552
    const auto diags = validate_config(cfg);
    REQUIRE(diags.size() == 1);
    CHECK(diags.front().severity == Diagnostic::Severity::warning);
    CHECK(diags.front().code == "EnergyConservation");
    CHECK_NOTHROW(derive_params(cfg));
}

TEST_CASE("config parser handles the documented key=value format") {
    std::istringstream in(
        "# comment line\n"
        "pump_central_wavelength_nm = 775.0\n"
        "signal_central_wavelength_nm = 1550.0  # trailing comment\n"
        "idler_central_wavelength_nm = 1550.0\n"
        "pump_fwhm_nm = 2.0\n"
        "crystal_length_mm = 25.0\n"
        "n_g_pump = 1.8145\n"
        "n_g_signal = 1.81\n"
        "n_g_idler = 1.8190\n");
    const ProcessConfig cfg = parse_config(in);
    CHECK(cfg.gamma == 1.0);      // default
    CHECK(cfg.chirp_fs2 == 0.0);  // default
    CHECK(cfg.pump_fwhm_nm == 2.0);
}

TEST_CASE("config parser rejects malformed input") {
    SECTION("unknown key") {
        std::istringstream in("pump_central_wavelength_nm = 775\nunknown_key = 1\n");
        CHECK_THROWS_AS(parse_config(in), InvalidConfig);
    }
    SECTION("missing required key") {
        std::istringstream in("pump_central_wavelength_nm = 775\n");
        CHECK_THROWS_AS(parse_config(in), InvalidConfig);
    }
    SECTION("non-numeric value") {
        std::istringstream in("pump_central_wavelength_nm = abc\n");
        CHECK_THROWS_AS(parse_config(in), InvalidConfig);
    }
    SECTION("duplicate key") {
        std::istringstream in("gamma = 1\ngamma = 2\n");
        CHECK_THROWS_AS(parse_config(in), InvalidConfig);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_config("/nonexistent/path.toml"), InvalidConfig);
    }
}

TEST_CASE("shipped symmetric config decorrelates at 2 nm pump FWHM") {
    const ProcessConfig cfg = testutil::shipped_symmetric();
    const DerivedParams p = derive_params(cfg);
    // decorrelation condition: 1/sigma^2 = -(gamma (L/c)^2 / 2) n_ps n_pi
    const double sigma_star =
        std::sqrt(2.0 / (p.gamma * p.l_over_c_fs * p.l_over_c_fs * (-p.n_ps * p.n_pi)));
    const double fwhm_star = pump_fwhm_nm_from_sigma(sigma_star, cfg.pump_central_wavelength_nm);
    CHECK(fwhm_star == Catch::Approx(2.0).epsilon(1e-9));
}
