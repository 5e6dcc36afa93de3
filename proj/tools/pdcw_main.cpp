// pdcw: spectral-temporal analysis of pulsed parametric downconversion.
// Subcommands: jsa, jsi, jti, spwf, sweep, ictbp, schmidt, validate.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pdcw/pdcw.hpp"

namespace {

// Exit codes: 2 config/validation failure, 3 I/O failure, 4 sweep with more
// than 10% failed points, 5 validation check failure.
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitSweep = 4;
constexpr int kExitValidate = 5;

struct GlobalOpts {
    std::string config_path;
    int grid_n = 256;
    double window_sigmas = 4.0;
    std::string out_path;
    int jobs = 1;
};

pdcw::ProcessConfig load_checked(const GlobalOpts& g) {
    const pdcw::ProcessConfig cfg = pdcw::load_config(g.config_path);
    bool bad = false;
    for (const auto& d : pdcw::validate_config(cfg)) {
        const char* tag = d.severity == pdcw::Diagnostic::Severity::error ? "error" : "warning";
        std::cerr << "pdcw: config " << tag << " [" << d.code << "] " << d.message << '\n';
        bad = bad || d.severity == pdcw::Diagnostic::Severity::error;
    }
    if (bad) throw pdcw::InvalidConfig("configuration failed validation");
    return cfg;
}

template <class Grid>
void write_grid_with_manifest(const Grid& grid, const GlobalOpts& g,
                              const pdcw::ProcessConfig& cfg, const std::string& command) {
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) throw pdcw::IoError("cannot open output file '" + g.out_path + "'");
    pdcw::write_csv(grid, out);
    out.flush();
    if (!out) throw pdcw::IoError("failed writing '" + g.out_path + "'");
    out.close();
    pdcw::RunManifest m;
    m.command = command;
    m.config = cfg;
    m.config_path = g.config_path;
    m.grid = {g.grid_n, g.window_sigmas};
    m.outputs = {g.out_path};
    pdcw::write_manifest(m);
    pdcw::log_info("wrote " + g.out_path + " and manifest");
}

void print_grid_summary(const char* what, const pdcw::Grid2D<double>& grid) {
    const pdcw::GridStats st = pdcw::grid_stats(grid);
    std::cout << what << " peak=" << pdcw::format_sci(st.peak)
              << " pearson=" << pdcw::format_sci(st.pearson)
              << " mass=" << pdcw::format_sci(st.mass) << " n=" << grid.axis1.count << "\n";
}

int cmd_grid(const GlobalOpts& g, const std::string& which) {
    const pdcw::ProcessConfig cfg = load_checked(g);
    const pdcw::DerivedParams p = pdcw::derive_params(cfg);
    const pdcw::ComplexGaussian2D jsa = pdcw::build_jsa(p, cfg.chirp_fs2);
    const pdcw::Window2 win = pdcw::auto_window(jsa, g.window_sigmas);
    if (which == "jsa") {
        const auto grid = pdcw::sample_jsa(jsa, win, g.grid_n);
        // summary statistics are intensity-based
        print_grid_summary("jsa", pdcw::sample_jsi(jsa, win, g.grid_n));
        write_grid_with_manifest(grid, g, cfg, which);
    } else if (which == "jsi") {
        const auto grid = pdcw::sample_jsi(jsa, win, g.grid_n);
        print_grid_summary("jsi", grid);
        write_grid_with_manifest(grid, g, cfg, which);
    } else {
        const auto grid = pdcw::sample_jti_fft(jsa, win, g.grid_n);
        print_grid_summary("jti", grid);
        write_grid_with_manifest(grid, g, cfg, which);
    }
    return 0;
}

int cmd_spwf(const GlobalOpts& g, bool unconditioned, double nu_i0, double tau_i0) {
    const pdcw::ProcessConfig cfg = load_checked(g);
    const pdcw::DerivedParams p = pdcw::derive_params(cfg);
    const pdcw::ComplexGaussian2D jsa = pdcw::build_jsa(p, cfg.chirp_fs2);
    const pdcw::GaussianForm wigner = pdcw::wigner_of_gaussian_jsa(jsa);
    const pdcw::GaussianForm uncond = pdcw::unconditioned_spwf(wigner);
    const pdcw::GaussianForm cond = pdcw::conditioned_spwf(wigner, nu_i0, tau_i0);

    if (!unconditioned) {
        // warn when the conditioning point sits far outside the idler
        // envelope; the slice shape is unchanged but its weight is negligible
        const pdcw::Moments m4 = pdcw::moments(wigner);
        const double s_nu = std::sqrt(m4.covariance(1, 1));
        const double s_tau = std::sqrt(m4.covariance(3, 3));
        if (std::abs(nu_i0 - m4.mean(1)) > 6.0 * s_nu ||
            std::abs(tau_i0 - m4.mean(3)) > 6.0 * s_tau)
            std::cerr << "pdcw: warning: conditioning point lies more than 6 sigma outside "
                         "the idler envelope; output amplitude there is negligible\n";
    }

    const pdcw::GaussianForm& form = unconditioned ? uncond : cond;
    const pdcw::Moments m = pdcw::moments(form);
    const int n = g.grid_n;
    auto grid = pdcw::make_grid<double>(
        pdcw::make_centered_axis(m.mean(0), g.window_sigmas * std::sqrt(m.covariance(0, 0)), n,
                                 "nu_s", "rad/fs"),
        pdcw::make_centered_axis(m.mean(1), g.window_sigmas * std::sqrt(m.covariance(1, 1)), n,
                                 "tau_s", "fs"));
    Eigen::VectorXd z(2);
    for (int i = 0; i < n; ++i) {
        z(0) = grid.axis1.coord(i);
        for (int j = 0; j < n; ++j) {
            z(1) = grid.axis2.coord(j);
            grid.at(i, j) = form.eval(z);
        }
    }

    // 1/e^2 half-widths of the marginal profiles: 2 sigma per axis
    const pdcw::Moments mu = pdcw::moments(uncond);
    const pdcw::Moments mc = pdcw::moments(cond);
    std::cout << "spwf kind=" << (unconditioned ? "unconditioned" : "conditioned")
              << " tbp_conditioned=" << pdcw::format_sci(pdcw::tbp_from_moments(cond))
              << " tbp_unconditioned=" << pdcw::format_sci(pdcw::tbp_from_moments(uncond))
              << " w_e2_cond_nu=" << pdcw::format_sci(2.0 * std::sqrt(mc.covariance(0, 0)))
              << " w_e2_cond_tau=" << pdcw::format_sci(2.0 * std::sqrt(mc.covariance(1, 1)))
              << " w_e2_uncond_nu=" << pdcw::format_sci(2.0 * std::sqrt(mu.covariance(0, 0)))
              << " w_e2_uncond_tau=" << pdcw::format_sci(2.0 * std::sqrt(mu.covariance(1, 1)))
              << "\n";
    write_grid_with_manifest(grid, g, cfg, "spwf");
    return 0;
}

int cmd_sweep(const GlobalOpts& g, const std::string& param, double from, double to, int steps,
              std::optional<double> chirp) {
    if (param != "pump_fwhm_nm")
        throw pdcw::InvalidConfig("unsupported sweep parameter '" + param +
                                  "' (only pump_fwhm_nm)");
    if (!(from > 0.0) || !(from < to) || steps < 2)
        throw pdcw::InvalidConfig("sweep needs 0 < from < to and steps >= 2");
    const pdcw::ProcessConfig cfg = load_checked(g);
    pdcw::SweepOptions opt;
    opt.from_nm = from;
    opt.to_nm = to;
    opt.steps = steps;
    opt.chirp_fs2 = chirp;
    opt.grid = {g.grid_n, g.window_sigmas};
    opt.jobs = g.jobs;
    const auto rows = pdcw::run_sweep(cfg, opt);

    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) throw pdcw::IoError("cannot open output file '" + g.out_path + "'");
    out << "pump_fwhm_nm,sigma,ictbp,k_jsa,k_jsi,tbp_unconditioned\n";
    int failed = 0;
    for (const auto& r : rows) {
        if (r.ok) {
            out << pdcw::format_sci(r.pump_fwhm_nm) << ',' << pdcw::format_sci(r.sigma) << ','
                << pdcw::format_sci(r.ictbp) << ',' << pdcw::format_sci(r.k_jsa) << ','
                << pdcw::format_sci(r.k_jsi) << ',' << pdcw::format_sci(r.tbp_unconditioned)
                << '\n';
        } else {
            ++failed;
            out << pdcw::format_sci(r.pump_fwhm_nm) << ",nan,nan,nan,nan,nan\n";
            std::cerr << "pdcw: sweep point " << r.pump_fwhm_nm << " nm failed: " << r.error
                      << '\n';
        }
    }
    out.flush();
    if (!out) throw pdcw::IoError("failed writing '" + g.out_path + "'");
    out.close();
    pdcw::RunManifest m;
    m.command = "sweep";
    m.config = cfg;
    m.config_path = g.config_path;
    m.grid = {g.grid_n, g.window_sigmas};
    m.outputs = {g.out_path};
    pdcw::write_manifest(m);

    std::cout << "sweep points=" << rows.size() << " failed=" << failed << "\n";
    return failed * 10 <= static_cast<int>(rows.size()) ? 0 : kExitSweep;
}

int cmd_scalar(const GlobalOpts& g, const std::string& which) {
    const pdcw::ProcessConfig cfg = load_checked(g);
    nlohmann::json j;
    if (which == "ictbp") {
        const pdcw::DerivedParams p = pdcw::derive_params(cfg);
        j = {{"ictbp", pdcw::ictbp_closed_form(p, cfg.chirp_fs2)},
             {"sigma", p.sigma},
             {"chirp_fs2", cfg.chirp_fs2}};
    } else {
        j = pdcw::to_json(pdcw::summarize_entanglement(cfg, {g.grid_n, g.window_sigmas}));
    }
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!g.out_path.empty()) {
        std::ofstream out(g.out_path, std::ios::binary);
        if (!out) throw pdcw::IoError("cannot open output file '" + g.out_path + "'");
        out << text;
        if (!out) throw pdcw::IoError("failed writing '" + g.out_path + "'");
    }
    return 0;
}

int cmd_validate(const GlobalOpts& g, bool corrupt) {
    const pdcw::ProcessConfig cfg = load_checked(g);
    pdcw::ValidationOptions opt;
    opt.grid = {g.grid_n, g.window_sigmas};
    opt.corrupt_analytic = corrupt;
    const auto checks = pdcw::run_validation(cfg, opt);
    const nlohmann::json j = pdcw::to_json(checks);
    bool all = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << " measured=" << pdcw::format_sci(c.measured)
                  << " tol=" << pdcw::format_sci(c.tolerance) << "\n";
        all = all && c.pass;
    }
    if (!g.out_path.empty()) {
        std::ofstream out(g.out_path, std::ios::binary);
        if (!out) throw pdcw::IoError("cannot open output file '" + g.out_path + "'");
        out << j.dump(2) << '\n';
        if (!out) throw pdcw::IoError("failed writing '" + g.out_path + "'");
    }
    return all ? 0 : kExitValidate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-temporal structure of pulsed parametric downconversion"};
    app.set_version_flag("--version", pdcw::kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "Path to the process config file")->required();
    app.add_option("--grid", g.grid_n, "Samples per grid axis")->capture_default_str();
    app.add_option("--window-sigmas", g.window_sigmas,
                   "Window half-width in marginal standard deviations")
        ->capture_default_str();
    app.add_option("--out", g.out_path, "Output file path");
    app.add_option("--jobs", g.jobs, "Concurrent sweep workers")->capture_default_str();

    auto* sub_jsa = app.add_subcommand("jsa", "Export the complex joint spectral amplitude");
    auto* sub_jsi = app.add_subcommand("jsi", "Export the joint spectral intensity");
    auto* sub_jti = app.add_subcommand("jti", "Export the joint temporal intensity (FFT)");

    auto* sub_spwf = app.add_subcommand("spwf", "Export a single-photon Wigner function");
    bool unconditioned = false;
    std::vector<double> cond_point;
    sub_spwf->add_flag("--unconditioned", unconditioned, "Marginalize over the idler");
    sub_spwf
        ->add_option("--conditioned", cond_point,
                     "Fix the idler at (nu_i0 [rad/fs], tau_i0 [fs])")
        ->expected(2);

    auto* sub_sweep = app.add_subcommand("sweep", "Pump-bandwidth sweep of ICTBP, K and TBP");
    std::string sweep_param = "pump_fwhm_nm";
    double sweep_from = 0.0, sweep_to = 0.0;
    int sweep_steps = 0;
    double sweep_chirp = 0.0;
    sub_sweep->add_option("--param", sweep_param, "Swept parameter")->capture_default_str();
    sub_sweep->add_option("--from", sweep_from, "Sweep start (nm)")->required();
    sub_sweep->add_option("--to", sweep_to, "Sweep end (nm)")->required();
    sub_sweep->add_option("--steps", sweep_steps, "Number of sweep points")->required();
    auto* chirp_opt =
        sub_sweep->add_option("--chirp-fs2", sweep_chirp, "Override the config chirp (fs^2)");

    auto* sub_ictbp = app.add_subcommand("ictbp", "Closed-form inverse conditioned TBP");
    auto* sub_schmidt =
        app.add_subcommand("schmidt", "Schmidt spectrum and entanglement summary");

    auto* sub_validate = app.add_subcommand("validate", "Run the oracle cross-checks");
    bool corrupt = false;
    sub_validate->add_flag("--debug-corrupt-analytic", corrupt,
                           "Fault injection: perturb one closed-form coefficient");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub_jsa->parsed() || sub_jsi->parsed() || sub_jti->parsed()) {
            const std::string which = sub_jsa->parsed() ? "jsa" : sub_jsi->parsed() ? "jsi" : "jti";
            if (g.out_path.empty())
                throw pdcw::InvalidConfig("--out is required for grid exports");
            return cmd_grid(g, which);
        }
        if (sub_spwf->parsed()) {
            if (g.out_path.empty())
                throw pdcw::InvalidConfig("--out is required for grid exports");
            if (unconditioned == !cond_point.empty())
                throw pdcw::InvalidConfig(
                    "spwf needs exactly one of --unconditioned or --conditioned nu_i0 tau_i0");
            const double nu0 = cond_point.empty() ? 0.0 : cond_point[0];
            const double tau0 = cond_point.empty() ? 0.0 : cond_point[1];
            return cmd_spwf(g, unconditioned, nu0, tau0);
        }
        if (sub_sweep->parsed()) {
            if (g.out_path.empty()) throw pdcw::InvalidConfig("--out is required for sweep");
            std::optional<double> chirp;
            if (chirp_opt->count() > 0) chirp = sweep_chirp;
            return cmd_sweep(g, sweep_param, sweep_from, sweep_to, sweep_steps, chirp);
        }
        if (sub_ictbp->parsed()) return cmd_scalar(g, "ictbp");
        if (sub_schmidt->parsed()) return cmd_scalar(g, "schmidt");
        if (sub_validate->parsed()) return cmd_validate(g, corrupt);
    } catch (const pdcw::IoError& e) {
        std::cerr << "pdcw: io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const pdcw::Error& e) {
        std::cerr << "pdcw: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "pdcw: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
