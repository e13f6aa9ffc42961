#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fraclap {

/// Run configuration for the command-line driver. Loaded from an INI-style
/// file ([section] headers, key = value lines, '#' comments), overridable
/// by the --seed/--tol/--out flags. validate() re-checks every domain
/// invariant and returns the violations by name.
struct RunConfig {
    // [problem]
    int dim = 1;
    double s = 0.25;
    double q = 3.0;
    double r = 3.5;                        // perturbation exponent, q < r <= crit
    double nu = 3.5;                       // (W2) metadata, q < nu < crit
    double tau_g = 1.5;                    // saturation exponent of the default f
    std::string weight = "gaussian";       // "gaussian" | "constant" | "csv:PATH"
    std::string nonlinearity = "default";  // "default" | "csv:PATH" (tabulated m(x))

    // [grid]
    double radius = 8.0;
    double spacing = 0.125;
    bool exterior = true;

    // [solver]
    double tol = 1e-8;
    int max_iter = 10000;
    int restarts = 2;
    std::uint64_t seed = 12345;
    double sep = 1e-3;

    // [multi]
    double lambda = 0.0;         // 0 = derive as lambda_factor * theta_hat
    double lambda_factor = 2.0;
    double mu = 0.0;
    bool persistence = true;

    // [moser]
    int n_steps = 12;

    // [output]
    std::string out_dir = "out";
    bool dump_matrix = false;  // also export the assembled form as dense CSV

    static RunConfig from_file(const std::filesystem::path& path);

    void apply_overrides(std::optional<std::uint64_t> seed_override,
                         std::optional<double> tol_override,
                         std::optional<std::string> out_override);

    /// Empty when the configuration is admissible.
    std::vector<std::string> validate() const;

    double crit() const;  // 2N/(N-2s); call only after validate()
};

}  // namespace fraclap
