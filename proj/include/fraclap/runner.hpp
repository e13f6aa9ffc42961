#pragma once

#include <iosfwd>
#include <string>

#include "fraclap/config.hpp"

namespace fraclap {

/// Process exit codes shared by every subcommand.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 2;
inline constexpr int verification_failure = 3;
inline constexpr int solver_failure = 4;
}  // namespace exit_code

/// Each command validates the configuration, writes its artifacts into
/// cfg.out_dir and returns an exit code. Failures leave a machine-readable
/// error.json in the output directory and a line on `log`.
int cmd_solve_eigen(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const std::string& solution_path, std::ostream& log);
int cmd_moser(const RunConfig& cfg, const std::string& solution_path, int n_steps,
              std::ostream& log);
int cmd_theta(const RunConfig& cfg, std::ostream& log);
int cmd_multi(const RunConfig& cfg, std::ostream& log);
int cmd_lemma_fuzz(const RunConfig& cfg, std::size_t draws, std::ostream& log);

}  // namespace fraclap
