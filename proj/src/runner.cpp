#include "fraclap/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "fraclap/eigensolver.hpp"
#include "fraclap/form.hpp"
#include "fraclap/functionals.hpp"
#include "fraclap/io.hpp"
#include "fraclap/lemmas.hpp"
#include "fraclap/moser.hpp"
#include "fraclap/multiparam.hpp"

namespace fraclap {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

json config_json(const RunConfig& cfg) {
    return json{{"problem",
                 {{"dim", cfg.dim},
                  {"s", cfg.s},
                  {"q", cfg.q},
                  {"r", cfg.r},
                  {"nu", cfg.nu},
                  {"tau_g", cfg.tau_g},
                  {"weight", cfg.weight},
                  {"nonlinearity", cfg.nonlinearity}}},
                {"grid",
                 {{"radius", cfg.radius}, {"spacing", cfg.spacing}, {"exterior", cfg.exterior}}},
                {"solver",
                 {{"tol", cfg.tol},
                  {"max_iter", cfg.max_iter},
                  {"restarts", cfg.restarts},
                  {"seed", cfg.seed},
                  {"sep", cfg.sep}}},
                {"multi",
                 {{"lambda", cfg.lambda},
                  {"lambda_factor", cfg.lambda_factor},
                  {"mu", cfg.mu},
                  {"persistence", cfg.persistence}}},
                {"moser", {{"n_steps", cfg.n_steps}}},
                {"output", {{"dir", cfg.out_dir}, {"dump_matrix", cfg.dump_matrix}}}};
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << j.dump(2) << '\n';
}

int fail(const RunConfig& cfg, std::ostream& log, int code, const std::string& stage,
         const std::string& message) {
    json err{{"error", message}, {"stage", stage}, {"exit_code", code}};
    err["config"] = config_json(cfg);
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (!ec) write_json(fs::path(cfg.out_dir) / "error.json", err);
    log << "error (" << stage << "): " << message << "\n";
    return code;
}

int check_config(const RunConfig& cfg, std::ostream& log) {
    const auto bad = cfg.validate();
    if (bad.empty()) return exit_code::ok;
    std::string joined;
    for (const auto& b : bad) joined += (joined.empty() ? "" : "; ") + b;
    return fail(cfg, log, exit_code::config_error, "config-validation", joined);
}

/// Everything the commands share: grid, form, parameters, weight and the
/// two nonlinearities, resolved from the configuration.
struct Context {
    std::shared_ptr<const Grid> grid;
    FracParams params;
    BilinearForm form;
    Weight weight;
    Nonlinearity f;
    Nonlinearity g;
    SolverOptions opts;

    static Context build(const RunConfig& cfg) {
        auto grid = build_grid(cfg.dim, cfg.radius, cfg.spacing);
        FracParams params(cfg.dim, cfg.s, cfg.q);
        auto form = BilinearForm::assemble(grid, Kernel::fractional(cfg.dim, cfg.s), cfg.exterior);

        Weight weight = [&]() -> Weight {
            if (cfg.weight == "gaussian") return Weight::gaussian(grid, cfg.nu, params);
            if (cfg.weight == "constant") return Weight::constant(grid, 1.0, cfg.nu, params);
            const fs::path path = cfg.weight.substr(4);
            return Weight(read_solution_csv(path, grid), cfg.nu, params);
        }();

        Nonlinearity f = Nonlinearity::saturating(cfg.q, cfg.tau_g);
        if (cfg.nonlinearity.rfind("csv:", 0) == 0) {
            // tabulated m(x): same saturating shape with nodal amplitudes
            const fs::path path = cfg.nonlinearity.substr(4);
            auto m_samples = std::make_shared<GridFunction>(read_solution_csv(path, grid));
            auto grid_ref = grid;
            auto nearest_m = [m_samples, grid_ref](const Point& x) {
                std::size_t best = 0;
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < grid_ref->size(); ++i) {
                    const Point& p = grid_ref->node(i);
                    const double d = std::hypot(x[0] - p[0], x[1] - p[1]);
                    if (d < best_d) {
                        best_d = d;
                        best = i;
                    }
                }
                return m_samples->values[best];
            };
            const double q = cfg.q, tau_g = cfg.tau_g;
            Nonlinearity base = Nonlinearity::saturating(q, tau_g);
            f.evaluate = [nearest_m, base](const Point& x, double t) {
                const double unit = base.evaluate(x, t) / base.bound_fn(x);
                return nearest_m(x) * unit;
            };
            f.primitive = [nearest_m, base](const Point& x, double t) {
                const double unit = base.primitive(x, t) / base.bound_fn(x);
                return nearest_m(x) * unit;
            };
            f.bound_fn = nearest_m;
            f.label = "saturating-tabulated";
        }
        Nonlinearity g = Nonlinearity::odd_power(cfg.r);

        SolverOptions opts;
        opts.tol = cfg.tol;
        opts.max_iter = cfg.max_iter;
        opts.restarts = cfg.restarts;
        opts.seed = cfg.seed;
        opts.sep = cfg.sep;

        return Context{std::move(grid), params,   std::move(form), std::move(weight),
                       std::move(f),    std::move(g), opts};
    }
};

double l2h_norm(const GridFunction& u) { return std::sqrt(dot_l2h(u, u)); }

}  // namespace

int cmd_solve_eigen(const RunConfig& cfg, std::ostream& log) {
    if (int rc = check_config(cfg, log); rc != exit_code::ok) return rc;
    try {
        Context ctx = Context::build(cfg);
        EigenPair pair = maximize_quotient(ctx.weight, ctx.params, ctx.form, ctx.opts);

        const double t = seminorm(ctx.form, pair.u);
        const double t_star = target_seminorm(ctx.params);
        const double integral = weighted_q_integral(pair.u, ctx.weight, ctx.params.q);
        const double e_uu = ctx.form(pair.u, pair.u);

        json report;
        report["lambda"] = pair.lambda;
        report["quotient_value"] = pair.quotient_value;
        report["residual"] = pair.residual;
        report["seminorm"] = t;
        report["seminorm_target"] = t_star;
        report["seminorm_identity_defect"] = std::abs(t - t_star) / t_star;
        report["phi_identity_defect"] = std::abs(e_uu - pair.lambda * integral) / e_uu;
        report["iterations"] = pair.iterations;
        report["restart_index"] = pair.restart_index;
        report["candidate_quotients"] = pair.candidate_quotients;
        report["node_count"] = ctx.grid->size();
        report["config"] = config_json(cfg);

        fs::create_directories(cfg.out_dir);
        write_json(fs::path(cfg.out_dir) / "eigenpair.json", report);
        write_solution_csv(fs::path(cfg.out_dir) / "solution.csv", pair.u);
        write_plot_csv(fs::path(cfg.out_dir) / "plot.csv", pair.u);
        if (cfg.dump_matrix) {
            write_matrix_csv(fs::path(cfg.out_dir) / "form_matrix.csv", ctx.form.matrix());
        }
        log << "solve-eigen: lambda = " << pair.lambda << ", residual = " << pair.residual
            << ", " << pair.iterations << " iterations\n";
        return exit_code::ok;
    } catch (const std::invalid_argument& e) {
        return fail(cfg, log, exit_code::config_error, "setup", e.what());
    } catch (const std::exception& e) {
        return fail(cfg, log, exit_code::solver_failure, "solve", e.what());
    }
}

int cmd_verify(const RunConfig& cfg, const std::string& solution_path, std::ostream& log) {
    if (int rc = check_config(cfg, log); rc != exit_code::ok) return rc;
    try {
        Context ctx = Context::build(cfg);
        const GridFunction u = read_solution_csv(solution_path, ctx.grid);

        json checks = json::array();
        bool all_pass = true;
        auto record = [&](const std::string& name, double value, double threshold) {
            const bool pass = value <= threshold;
            all_pass = all_pass && pass;
            checks.push_back(json{
                {"name", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}});
            return pass;
        };

        const double sup = linf_norm(u);
        if (!record("nontriviality", sup > 0.0 ? 0.0 : 1.0, 0.5)) {
            // remaining checks are meaningless at u = 0
        } else {
            const double integral = weighted_q_integral(u, ctx.weight, ctx.params.q);
            if (record("admissibility", integral > 0.0 ? 0.0 : 1.0, 0.5)) {
                const double lambda = lambda_from(u, ctx.weight, ctx.params, ctx.form);
                const double residual = weak_residual(u, lambda, ctx.weight, ctx.params, ctx.form);
                record("weak-residual", residual, cfg.tol);

                const double e_uu = ctx.form(u, u);
                record("phi-identity", std::abs(e_uu - lambda * integral) / e_uu, 1e-8);

                const double t = std::sqrt(e_uu);
                const double t_star = target_seminorm(ctx.params);
                record("seminorm-identity", std::abs(t - t_star) / t_star, 1e-6);
            }
        }

        json report;
        report["solution"] = solution_path;
        report["checks"] = checks;
        report["pass"] = all_pass;
        report["config"] = config_json(cfg);
        fs::create_directories(cfg.out_dir);
        write_json(fs::path(cfg.out_dir) / "verify_report.json", report);

        for (const auto& c : checks) {
            log << (c["pass"].get<bool>() ? "  ok   " : "  FAIL ") << c["name"].get<std::string>()
                << " = " << c["value"].get<double>() << " (threshold "
                << c["threshold"].get<double>() << ")\n";
        }
        log << (all_pass ? "verify: pass\n" : "verify: FAIL\n");
        return all_pass ? exit_code::ok : exit_code::verification_failure;
    } catch (const std::invalid_argument& e) {
        return fail(cfg, log, exit_code::config_error, "setup", e.what());
    } catch (const std::exception& e) {
        return fail(cfg, log, exit_code::verification_failure, "verify", e.what());
    }
}

int cmd_moser(const RunConfig& cfg, const std::string& solution_path, int n_steps,
              std::ostream& log) {
    if (int rc = check_config(cfg, log); rc != exit_code::ok) return rc;
    try {
        Context ctx = Context::build(cfg);
        const GridFunction u = read_solution_csv(solution_path, ctx.grid);
        const double r_exp = moser_exponent_r(ctx.params, cfg.nu);
        const MoserLadder lad = ladder(u, ctx.params, r_exp, n_steps);

        fs::create_directories(cfg.out_dir);
        write_ladder_csv(fs::path(cfg.out_dir) / "ladder.csv", lad);

        json report;
        report["r_exp"] = r_exp;
        report["n_steps"] = n_steps;
        report["fitted_c"] = lad.fitted_c;
        report["sup_bound"] = lad.sup_bound;
        report["sup_actual"] = lad.sup_actual;
        report["final_exponent"] = lad.exponents.back();
        report["final_norm"] = lad.norms.back();
        report["zero_input"] = lad.zero_input;
        report["config"] = config_json(cfg);
        write_json(fs::path(cfg.out_dir) / "moser.json", report);

        if (lad.zero_input) {
            log << "warning: zero solution, ladder is identically zero\n";
        }
        log << "moser: final norm " << lad.norms.back() << " at exponent "
            << lad.exponents.back() << ", sup " << lad.sup_actual << "\n";
        return exit_code::ok;
    } catch (const std::invalid_argument& e) {
        return fail(cfg, log, exit_code::config_error, "setup", e.what());
    } catch (const std::exception& e) {
        return fail(cfg, log, exit_code::solver_failure, "moser", e.what());
    }
}

int cmd_theta(const RunConfig& cfg, std::ostream& log) {
    if (int rc = check_config(cfg, log); rc != exit_code::ok) return rc;
    try {
        Context ctx = Context::build(cfg);
        const ThetaResult th = estimate_theta(ctx.f, ctx.params, ctx.form, ctx.opts);

        // the attainer witnesses negative energy once lambda exceeds
        // Phi/J at that function; at lambda = 2 theta it is about -Phi
        const double lambda_witness = 2.0 * th.theta;
        TwoParamProblem pb(ctx.f, ctx.g, lambda_witness, 0.0, ctx.params, cfg.r);
        const double witness_energy = energy(pb, th.attainer, ctx.form);

        json report;
        report["theta"] = th.theta;
        report["best_ratio"] = th.best_ratio;
        report["iterations"] = th.iterations;
        report["attainer_seminorm"] = seminorm(ctx.form, th.attainer);
        report["attainer_l2"] = l2h_norm(th.attainer);
        report["witness_lambda"] = lambda_witness;
        report["witness_energy"] = witness_energy;
        report["config"] = config_json(cfg);
        fs::create_directories(cfg.out_dir);
        write_json(fs::path(cfg.out_dir) / "theta.json", report);
        log << "theta: " << th.theta << " (witness energy " << witness_energy << ")\n";
        return exit_code::ok;
    } catch (const std::invalid_argument& e) {
        return fail(cfg, log, exit_code::config_error, "setup", e.what());
    } catch (const std::exception& e) {
        return fail(cfg, log, exit_code::solver_failure, "theta", e.what());
    }
}

int cmd_multi(const RunConfig& cfg, std::ostream& log) {
    if (int rc = check_config(cfg, log); rc != exit_code::ok) return rc;
    try {
        Context ctx = Context::build(cfg);
        const ThetaResult th = estimate_theta(ctx.f, ctx.params, ctx.form, ctx.opts);
        const double lambda = cfg.lambda > 0.0 ? cfg.lambda : cfg.lambda_factor * th.theta;

        json report;
        report["theta"] = th.theta;
        report["lambda"] = lambda;
        report["mu"] = cfg.mu;

        // persistence needs the mu = 0 solution pair
        double mu_hat = std::numeric_limits<double>::quiet_NaN();
        json persistence_json;
        MultiResult base;
        {
            TwoParamProblem pb0(ctx.f, ctx.g, lambda, 0.0, ctx.params, cfg.r);
            base = find_critical_points(pb0, ctx.form, ctx.opts, th.theta);
        }
        const bool want_persistence = cfg.persistence || cfg.mu > 0.0;
        if (want_persistence) {
            const GridFunction* up = nullptr;
            const GridFunction* um = nullptr;
            for (const auto& p : base.points) {
                if (l2h_norm(p.u) <= ctx.opts.sep) continue;
                if (!up) {
                    up = &p.u;
                } else if (!um) {
                    um = &p.u;
                    break;
                }
            }
            if (up && um) {
                TwoParamProblem pb0(ctx.f, ctx.g, lambda, 0.0, ctx.params, cfg.r);
                const PersistenceResult pr =
                    persistence_bisection(pb0, ctx.form, ctx.opts, *up, *um);
                mu_hat = pr.mu_hat;
                persistence_json["mu_hat"] = pr.mu_hat;
                persistence_json["capped"] = pr.capped;
                json sweep = json::array();
                for (const auto& [mu, ok] : pr.sweep) {
                    sweep.push_back(json{{"mu", mu}, {"persisted", ok}});
                }
                persistence_json["sweep"] = sweep;
            } else {
                persistence_json["mu_hat"] = nullptr;
                persistence_json["note"] = "fewer than two nonzero points at mu = 0";
            }
        }

        MultiResult result;
        if (cfg.mu == 0.0) {
            result = std::move(base);
        } else {
            TwoParamProblem pb(ctx.f, ctx.g, lambda, cfg.mu, ctx.params, cfg.r);
            result = find_critical_points(pb, ctx.form, ctx.opts, th.theta);
            if (!std::isnan(mu_hat) && cfg.mu > mu_hat) {
                result.regime = "outside-theorem-regime";
            }
        }

        json points = json::array();
        std::size_t nonzero = 0;
        for (const auto& p : result.points) {
            const double l2 = l2h_norm(p.u);
            if (l2 > ctx.opts.sep) ++nonzero;
            points.push_back(json{{"energy", p.energy},
                                  {"grad_norm", p.grad_norm},
                                  {"l2_norm", l2},
                                  {"classification", to_string(p.classification)},
                                  {"start_index", p.start_index}});
        }
        report["regime"] = result.regime;
        report["points"] = points;
        report["nonzero_points"] = nonzero;
        report["starts_converged"] = result.starts_converged;
        report["starts_total"] = result.starts_total;
        if (want_persistence) report["persistence"] = persistence_json;
        report["config"] = config_json(cfg);

        fs::create_directories(cfg.out_dir);
        write_json(fs::path(cfg.out_dir) / "multi.json", report);
        // solutions for downstream inspection
        std::size_t written = 0;
        for (const auto& p : result.points) {
            if (l2h_norm(p.u) <= ctx.opts.sep) continue;
            write_solution_csv(
                fs::path(cfg.out_dir) / ("critical_point_" + std::to_string(written++) + ".csv"),
                p.u);
        }
        log << "multi: " << nonzero << " nonzero point(s), regime " << result.regime << "\n";
        return exit_code::ok;
    } catch (const std::invalid_argument& e) {
        return fail(cfg, log, exit_code::config_error, "setup", e.what());
    } catch (const std::exception& e) {
        return fail(cfg, log, exit_code::solver_failure, "multi", e.what());
    }
}

int cmd_lemma_fuzz(const RunConfig& cfg, std::size_t draws, std::ostream& log) {
    if (int rc = check_config(cfg, log); rc != exit_code::ok) return rc;
    try {
        fs::create_directories(cfg.out_dir);
        std::ofstream jsonl(fs::path(cfg.out_dir) / "lemma_fuzz.jsonl");
        jsonl << std::setprecision(17);
        const FuzzReport r1 = fuzz_lemma1(draws, cfg.seed, &jsonl);
        const FuzzReport r2 = fuzz_lemma2(draws, cfg.seed + 1, &jsonl);

        json report;
        report["lemma1"] = {{"draws", r1.draws},
                            {"violations", r1.violations},
                            {"min_margin", r1.min_margin}};
        report["lemma2"] = {{"draws", r2.draws},
                            {"violations", r2.violations},
                            {"min_margin", r2.min_margin}};
        report["config"] = config_json(cfg);
        write_json(fs::path(cfg.out_dir) / "lemma_fuzz.json", report);

        log << "lemma-fuzz: " << r1.violations + r2.violations << " violation(s) in "
            << r1.draws + r2.draws << " draws\n";
        return r1.violations + r2.violations == 0 ? exit_code::ok
                                                  : exit_code::verification_failure;
    } catch (const std::exception& e) {
        return fail(cfg, log, exit_code::solver_failure, "lemma-fuzz", e.what());
    }
}

}  // namespace fraclap
