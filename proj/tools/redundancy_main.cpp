// redundancy -- command-line surface over the redundancy library.
//
// Subcommands: discrete, gaussian, spectral, heads, estimate,
// equilibrium find|simulate|sandwich|ufit. Reports go to stdout as JSON with
// stable key order and 9-significant-digit floats; diagnostics to stderr.
// Exit codes: 0 success, 2 input/validation error, 1 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "redkit/csv.hpp"
#include "redkit/discrete.hpp"
#include "redkit/equilibrium.hpp"
#include "redkit/errors.hpp"
#include "redkit/estimators.hpp"
#include "redkit/gaussian.hpp"
#include "redkit/kernels.hpp"
#include "redkit/report.hpp"
#include "redkit/spectral.hpp"

namespace {

using redkit::Report;

std::vector<std::size_t> parse_sizes(const std::string& arg) {
    std::vector<std::size_t> sizes;
    std::size_t start = 0;
    while (start <= arg.size()) {
        const std::size_t comma = arg.find(',', start);
        const std::string tok =
            arg.substr(start, comma == std::string::npos ? comma : comma - start);
        try {
            std::size_t pos = 0;
            const long v = std::stol(tok, &pos);
            if (pos != tok.size() || v <= 0) throw std::invalid_argument(tok);
            sizes.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw redkit::validation_error("--sizes: cannot parse '" + arg + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return sizes;
}

std::uint64_t default_seed_from_env() {
    const char* env = std::getenv("REDKIT_SEED");
    if (!env) return 0;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(env, &pos);
        if (pos != std::string(env).size()) throw std::invalid_argument(env);
        return v;
    } catch (const std::exception&) {
        throw redkit::validation_error(std::string("REDKIT_SEED: cannot parse '") +
                                       env + "'");
    }
}

// Values from a JSON config file act as defaults; explicit flags win.
struct ConfigOverlay {
    nlohmann::json j;

    static ConfigOverlay load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw redkit::validation_error("cannot open config: " + path);
        ConfigOverlay overlay;
        try {
            in >> overlay.j;
        } catch (const std::exception& e) {
            throw redkit::validation_error("config " + path + ": " + e.what());
        }
        return overlay;
    }

    template <typename T>
    void apply(const CLI::App* cmd, const std::string& flag, const char* key,
               T& target) const {
        if (cmd->count(flag) > 0) return;  // explicit flag wins
        if (!j.contains(key)) return;
        try {
            target = j.at(key).get<T>();
        } catch (const std::exception& e) {
            throw redkit::validation_error(std::string("config key '") + key +
                                           "': " + e.what());
        }
    }
};

void emit(const Report& report) { std::cout << report.to_json() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"redundancy calculator: f-divergence from independence, "
                 "Gaussian/spectral closed forms, estimators, equilibria"};
    app.require_subcommand(1);

    // --- discrete ------------------------------------------------------------
    auto* discrete = app.add_subcommand(
        "discrete", "Redundancy of a dense joint table under a kernel");
    std::string d_table, d_kernel = "kl", d_channels;
    discrete->add_option("--table", d_table, "joint table CSV")->required();
    discrete->add_option("--kernel", d_kernel,
                         "kl | chi2 | power:<alpha> | hellinger2 | js");
    discrete->add_option("--channels", d_channels,
                         "coordinate channels CSV ('---' separated) for a DPI run");

    // --- gaussian ------------------------------------------------------------
    auto* gaussian = app.add_subcommand(
        "gaussian", "Closed-form Gaussian redundancy of a correlation matrix");
    std::string g_corr, g_cov;
    gaussian->add_option("--corr", g_corr, "correlation matrix CSV");
    gaussian->add_option("--cov", g_cov, "covariance matrix CSV");

    // --- spectral ------------------------------------------------------------
    auto* spectral = app.add_subcommand(
        "spectral", "Spectral entropy, effective rank and spectral redundancy");
    std::string s_batch, s_eigs;
    spectral->add_option("--batch", s_batch, "batch CSV (rows = samples)");
    spectral->add_option("--eigs", s_eigs, "eigenvalue list CSV");

    // --- heads ---------------------------------------------------------------
    auto* heads = app.add_subcommand("heads", "Attention-head redundancy");
    std::vector<std::string> h_files;
    heads->add_option("--heads", h_files,
                      "head matrix CSV (repeatable; '---' separates heads)")
        ->required();

    // --- estimate ------------------------------------------------------------
    auto* estimate =
        app.add_subcommand("estimate", "Sample-based plug-in estimators");
    std::string e_samples, e_mode = "chi2", e_sizes, e_kernel = "kl";
    estimate->add_option("--samples", e_samples, "sample rows CSV")->required();
    estimate->add_option("--mode", e_mode, "joint | chi2");
    estimate->add_option("--sizes", e_sizes, "alphabet sizes k1,k2,... (mode joint)");
    estimate->add_option("--kernel", e_kernel, "kernel for mode joint");

    // --- equilibrium ---------------------------------------------------------
    auto* equilibrium =
        app.add_subcommand("equilibrium", "Redundancy-balance computations");
    equilibrium->require_subcommand(1);

    std::string q_config;
    std::string q_curve = "quadratic:0.5";
    double q_lambda = 0.1, q_rlo = 0.0, q_rhi = 1.0, q_tol = 1e-8;
    std::size_t q_grid = 256;

    auto add_problem_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", q_config, "JSON config with defaults");
        cmd->add_option("--curve", q_curve,
                        "risk curve spec (quadratic:c[,off] | affine:m,b | "
                        "piecewise:a,b | table:<csv>)");
        cmd->add_option("--lambda", q_lambda, "trade-off weight > 0");
        cmd->add_option("--rlo", q_rlo, "domain lower end");
        cmd->add_option("--rhi", q_rhi, "domain upper end");
        cmd->add_option("--tol", q_tol, "search tolerance");
        cmd->add_option("--grid", q_grid, "grid points before refinement");
    };

    auto* eq_find = equilibrium->add_subcommand("find", "Minimize Phi = D + lambda R");
    add_problem_flags(eq_find);

    auto* eq_sim = equilibrium->add_subcommand(
        "simulate", "Noisy slope descent and its stability band");
    add_problem_flags(eq_sim);
    std::size_t q_steps = 500;
    double q_sigma = 0.0, q_r0 = -1.0, q_window = 0.2;
    std::uint64_t q_seed = default_seed_from_env();
    std::string q_eta = "const:0.1", q_out_csv;
    eq_sim->add_option("--steps", q_steps, "number of updates");
    eq_sim->add_option("--sigma", q_sigma, "noise standard deviation");
    eq_sim->add_option("--seed", q_seed, "generator seed (default REDKIT_SEED or 0)");
    eq_sim->add_option("--eta", q_eta, "step schedule const:<eta> | invt:<c>");
    eq_sim->add_option("--r0", q_r0, "start point (default: domain midpoint)");
    eq_sim->add_option("--window", q_window, "trailing band window fraction");
    eq_sim->add_option("--out-csv", q_out_csv, "write the trajectory CSV here");

    auto* eq_sandwich = equilibrium->add_subcommand(
        "sandwich", "Interior optimum of a sandwiched error curve");
    std::string w_error = "quadratic:0.45,0.1", w_grobust = "affine:-0.05,0.1",
                w_ginfo = "affine:0.1,0.41";
    double w_c0 = 1.0, w_r1 = 0.2, w_r2 = 0.8, w_tol = 1e-8;
    std::size_t w_grid = 256;
    eq_sandwich->add_option("--config", q_config, "JSON config with defaults");
    eq_sandwich->add_option("--error-curve", w_error, "error curve spec E(R)");
    eq_sandwich->add_option("--g-robust", w_grobust, "lower bounding curve of R");
    eq_sandwich->add_option("--g-info", w_ginfo, "upper bounding curve of C0-R");
    eq_sandwich->add_option("--c0", w_c0, "entropy budget C0");
    eq_sandwich->add_option("--r1", w_r1, "left end of the interior window");
    eq_sandwich->add_option("--r2", w_r2, "right end of the interior window");
    eq_sandwich->add_option("--tol", w_tol, "search tolerance");
    eq_sandwich->add_option("--grid", w_grid, "validation/search grid points");

    auto* eq_ufit = equilibrium->add_subcommand(
        "ufit", "Least-squares quadratic through (R, score) points");
    std::string u_points;
    bool u_minimize = false;
    eq_ufit->add_option("--points", u_points, "CSV of R,score rows")->required();
    eq_ufit->add_flag("--minimize", u_minimize,
                      "treat score as a loss (default: maximize)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints usage hint to stderr
        return 2;
    } catch (const redkit::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*discrete) {
            const auto kernel = redkit::Kernel::from_name(d_kernel);
            const auto table = redkit::csv::read_joint_table(d_table);
            Report report("discrete");
            report.add_input("table", d_table);
            if (!d_channels.empty()) report.add_input("channels", d_channels);
            report.add_result("kernel", kernel.name());
            const double before = redkit::redundancy_f(table, kernel);
            report.add_result("redundancy", before);
            if (!d_channels.empty()) {
                const auto channels = redkit::csv::read_channels(d_channels);
                const auto pushed = redkit::apply_coordinate_channels(table, channels);
                const double after = redkit::redundancy_f(pushed, kernel);
                report.add_result("redundancy_after_channels", after);
                report.add_result("dpi_holds", after <= before + 1e-10);
            }
            emit(report);
        } else if (*gaussian) {
            if (g_corr.empty() == g_cov.empty())
                throw redkit::validation_error(
                    "gaussian: pass exactly one of --corr or --cov");
            Report report("gaussian");
            std::optional<redkit::CorrelationModel> model;
            if (!g_corr.empty()) {
                report.add_input("corr", g_corr);
                model.emplace(redkit::csv::read_matrix(g_corr));
            } else {
                report.add_input("cov", g_cov);
                model.emplace(
                    redkit::correlation_from_covariance(redkit::csv::read_matrix(g_cov)));
            }
            report.add_result("dim", static_cast<long>(model->dim()));
            report.add_result("total_correlation",
                              redkit::gaussian_total_correlation(*model));
            report.add_result("chi2_proxy", redkit::chi2_quadratic_proxy(*model));
            const double fro = model->deviation_frobenius();
            const double rho = model->deviation_spectral_radius();
            report.add_result("deviation_frobenius", fro);
            report.add_result("deviation_spectral_radius", rho);
            const bool applicable = rho < 1.0;
            report.add_result("kl_frobenius_applicable", applicable);
            if (applicable)
                report.add_result("kl_frobenius_bound",
                                  redkit::kl_frobenius_lower_bound(*model));
            emit(report);
        } else if (*spectral) {
            if (s_batch.empty() == s_eigs.empty())
                throw redkit::validation_error(
                    "spectral: pass exactly one of --batch or --eigs");
            Report report("spectral");
            redkit::Spectrum spectrum;
            if (!s_batch.empty()) {
                report.add_input("batch", s_batch);
                spectrum =
                    redkit::spectral_redundancy_of_batch(redkit::csv::read_matrix(s_batch));
            } else {
                report.add_input("eigs", s_eigs);
                spectrum = redkit::spectrum_from_eigenvalues(redkit::csv::read_values(s_eigs));
            }
            report.add_result("dim", static_cast<long>(spectrum.dim()));
            report.add_result("spectral_entropy", spectrum.spectral_entropy);
            report.add_result("effective_rank", spectrum.effective_rank);
            report.add_result("r_spec", spectrum.spectral_redundancy);
            emit(report);
        } else if (*heads) {
            Report report("heads");
            std::vector<redkit::Matrix> maps;
            for (std::size_t i = 0; i < h_files.size(); ++i) {
                report.add_input(h_files.size() == 1 ? "heads"
                                                     : "heads" + std::to_string(i),
                                 h_files[i]);
                for (auto& m : redkit::csv::read_matrices(h_files[i]))
                    maps.push_back(std::move(m));
            }
            const redkit::AttentionStack stack(std::move(maps));
            report.add_result("head_count", static_cast<long>(stack.heads.size()));
            report.add_result("r_head", redkit::head_redundancy(stack));
            emit(report);
        } else if (*estimate) {
            Report report("estimate");
            report.add_input("samples", e_samples);
            report.add_result("mode", e_mode);
            if (e_mode == "joint") {
                if (e_sizes.empty())
                    throw redkit::validation_error("estimate --mode joint needs --sizes");
                const auto kernel = redkit::Kernel::from_name(e_kernel);
                const auto rows = redkit::csv::read_int_rows(e_samples);
                const auto table = redkit::empirical_joint(rows, parse_sizes(e_sizes));
                report.add_result("kernel", kernel.name());
                report.add_result("rows", static_cast<long>(rows.size()));
                report.add_result("redundancy", redkit::redundancy_f(table, kernel));
            } else if (e_mode == "chi2") {
                const redkit::SampleBatch batch(redkit::csv::read_matrix(e_samples));
                report.add_result("rows", static_cast<long>(batch.rows()));
                report.add_result("chi2_estimate", redkit::chi2_redundancy_estimate(batch));
            } else {
                throw redkit::validation_error("estimate: unknown mode '" + e_mode + "'");
            }
            emit(report);
        } else if (*equilibrium) {
            std::optional<ConfigOverlay> config;
            if (!q_config.empty()) config = ConfigOverlay::load(q_config);

            auto overlay_problem = [&](const CLI::App* cmd) {
                if (!config) return;
                config->apply(cmd, "--curve", "curve", q_curve);
                config->apply(cmd, "--lambda", "lambda", q_lambda);
                config->apply(cmd, "--rlo", "rlo", q_rlo);
                config->apply(cmd, "--rhi", "rhi", q_rhi);
                config->apply(cmd, "--tol", "tol", q_tol);
                config->apply(cmd, "--grid", "grid", q_grid);
            };
            auto build_problem = [&](const CLI::App* cmd) {
                auto curve = redkit::parse_risk_curve(q_curve, q_rlo, q_rhi);
                // table curves default to their data range; an explicit flag or
                // config key narrows it
                const bool rlo_set = cmd->count("--rlo") > 0 ||
                                     (config && config->j.contains("rlo"));
                const bool rhi_set = cmd->count("--rhi") > 0 ||
                                     (config && config->j.contains("rhi"));
                if (rlo_set) curve.r_lo = q_rlo;
                if (rhi_set) curve.r_hi = q_rhi;
                return redkit::EquilibriumProblem{std::move(curve), q_lambda};
            };

            if (*eq_find) {
                overlay_problem(eq_find);
                const auto problem = build_problem(eq_find);
                const auto result = redkit::find_equilibrium(problem, q_tol,
                                                             {.grid_points = q_grid});
                Report report("equilibrium.find");
                if (!q_config.empty()) report.add_input("config", q_config);
                report.add_result("curve", q_curve);
                report.add_result("lambda", q_lambda);
                report.add_result("r_star", result.r_star);
                report.add_result("phi_star", result.value);
                report.add_result("interior", result.interior);
                report.add_result("plateau", result.plateau);
                if (result.plateau) {
                    report.add_result("plateau_lo", result.plateau_lo);
                    report.add_result("plateau_hi", result.plateau_hi);
                }
                emit(report);
            } else if (*eq_sim) {
                overlay_problem(eq_sim);
                if (config) {
                    config->apply(eq_sim, "--steps", "steps", q_steps);
                    config->apply(eq_sim, "--sigma", "sigma", q_sigma);
                    config->apply(eq_sim, "--seed", "seed", q_seed);
                    config->apply(eq_sim, "--eta", "eta", q_eta);
                    config->apply(eq_sim, "--r0", "r0", q_r0);
                    config->apply(eq_sim, "--window", "window", q_window);
                }
                const auto problem = build_problem(eq_sim);
                if (eq_sim->count("--r0") == 0 && (!config || !config->j.contains("r0")))
                    q_r0 = 0.5 * (problem.curve.r_lo + problem.curve.r_hi);
                const auto schedule = redkit::StepSchedule::parse(q_eta);
                const auto traj = redkit::simulate_band(problem, q_steps, schedule,
                                                        q_sigma, q_seed, q_r0, q_window);
                const auto eq = redkit::find_equilibrium(problem, q_tol,
                                                         {.grid_points = q_grid});
                if (!q_out_csv.empty()) redkit::csv::write_trajectory(q_out_csv, traj);
                Report report("equilibrium.simulate");
                if (!q_config.empty()) report.add_input("config", q_config);
                report.add_result("curve", q_curve);
                report.add_result("lambda", q_lambda);
                report.add_result("steps", static_cast<long>(q_steps));
                report.add_result("sigma", q_sigma);
                report.add_result("seed", static_cast<long>(q_seed));
                report.add_result("eta", schedule.spec);
                report.add_result("r0", q_r0);
                report.add_result("r_star", eq.r_star);
                const double band[2] = {traj.band_lo, traj.band_hi};
                report.add_result("band", std::span<const double>(band, 2));
                report.add_result("band_width", traj.band_hi - traj.band_lo);
                report.add_result("final_r", traj.values.back());
                report.add_result("interior", eq.interior);
                emit(report);
            } else if (*eq_sandwich) {
                if (config) {
                    config->apply(eq_sandwich, "--error-curve", "error_curve", w_error);
                    config->apply(eq_sandwich, "--g-robust", "g_robust", w_grobust);
                    config->apply(eq_sandwich, "--g-info", "g_info", w_ginfo);
                    config->apply(eq_sandwich, "--c0", "c0", w_c0);
                    config->apply(eq_sandwich, "--r1", "r1", w_r1);
                    config->apply(eq_sandwich, "--r2", "r2", w_r2);
                    config->apply(eq_sandwich, "--tol", "tol", w_tol);
                    config->apply(eq_sandwich, "--grid", "grid", w_grid);
                }
                redkit::SandwichModel model;
                model.error_curve = redkit::parse_risk_curve(w_error, 0.0, w_c0).value;
                model.g_robust = redkit::parse_risk_curve(w_grobust, 0.0, w_c0).value;
                model.g_info = redkit::parse_risk_curve(w_ginfo, 0.0, w_c0).value;
                model.c0 = w_c0;
                model.r1 = w_r1;
                model.r2 = w_r2;
                const auto result =
                    redkit::sandwich_optimum(model, w_tol, {.grid_points = w_grid});
                Report report("equilibrium.sandwich");
                if (!q_config.empty()) report.add_input("config", q_config);
                report.add_result("error_curve", w_error);
                report.add_result("r_star", result.r_star);
                report.add_result("e_star", result.value);
                report.add_result("interior", true);
                report.add_result("plateau", result.plateau);
                emit(report);
            } else if (*eq_ufit) {
                const auto points = redkit::csv::read_pairs(u_points);
                const auto fit = redkit::ushape_fit(points, u_minimize);
                Report report("equilibrium.ufit");
                report.add_input("points", u_points);
                report.add_result("n_points", static_cast<long>(points.size()));
                report.add_result("minimize", u_minimize);
                report.add_result("a", fit.a);
                report.add_result("b", fit.b);
                report.add_result("c", fit.c);
                report.add_result("vertex_defined", fit.vertex_defined);
                if (fit.vertex_defined) report.add_result("vertex", fit.vertex);
                report.add_result("interior", fit.interior);
                emit(report);
            }
        }
    } catch (const redkit::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const redkit::numeric_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
