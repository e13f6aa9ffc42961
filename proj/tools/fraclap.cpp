// Command-line driver: solve-eigen, verify, moser, theta, multi, lemma-fuzz.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fraclap/config.hpp"
#include "fraclap/runner.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "configuration file (INI sections)");
    cmd->add_option("--out", flags.out_dir, "output directory (overrides [output] dir)");
    cmd->add_option("--seed", flags.seed, "RNG seed (overrides [solver] seed)");
    cmd->add_option("--tol", flags.tol, "solver tolerance (overrides [solver] tol)");
}

fraclap::RunConfig load(const CommonFlags& flags) {
    fraclap::RunConfig cfg = flags.config_path.empty()
                                 ? fraclap::RunConfig{}
                                 : fraclap::RunConfig::from_file(flags.config_path);
    cfg.apply_overrides(flags.seed, flags.tol, flags.out_dir);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fraclap: nonlocal eigenpairs, Moser ladders and two-parameter searches"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string solution_path;
    int n_steps = 0;
    std::size_t draws = 10000;

    auto* solve = app.add_subcommand("solve-eigen", "maximize the quotient, write the eigenpair");
    add_common(solve, flags);

    auto* verify = app.add_subcommand("verify", "check a solution file against the weak form");
    add_common(verify, flags);
    verify->add_option("solution", solution_path, "solution CSV to verify")->required();

    auto* moser = app.add_subcommand("moser", "run the exponent ladder on a solution file");
    add_common(moser, flags);
    moser->add_option("solution", solution_path, "solution CSV")->required();
    moser->add_option("--steps", n_steps, "ladder steps (default from config)");

    auto* theta = app.add_subcommand("theta", "estimate the coercivity threshold");
    add_common(theta, flags);

    auto* multi = app.add_subcommand("multi", "multi-start critical point search");
    add_common(multi, flags);

    auto* fuzz = app.add_subcommand("lemma-fuzz", "random campaigns on the pointwise inequalities");
    add_common(fuzz, flags);
    fuzz->add_option("--draws", draws, "draws per lemma (default 10000)");

    CLI11_PARSE(app, argc, argv);

    try {
        const fraclap::RunConfig cfg = load(flags);
        if (solve->parsed()) return fraclap::cmd_solve_eigen(cfg, std::cout);
        if (verify->parsed()) return fraclap::cmd_verify(cfg, solution_path, std::cout);
        if (moser->parsed()) {
            return fraclap::cmd_moser(cfg, solution_path, n_steps > 0 ? n_steps : cfg.n_steps,
                                      std::cout);
        }
        if (theta->parsed()) return fraclap::cmd_theta(cfg, std::cout);
        if (multi->parsed()) return fraclap::cmd_multi(cfg, std::cout);
        if (fuzz->parsed()) return fraclap::cmd_lemma_fuzz(cfg, draws, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fraclap::exit_code::config_error;
    }
    return fraclap::exit_code::config_error;
}
