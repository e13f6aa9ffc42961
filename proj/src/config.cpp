#include "fraclap/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fraclap {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: key '" + key + "' expects a boolean, got '" + v + "'");
}

}  // namespace

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot open '" + path.string() + "'");
    }
    std::map<std::string, std::string> kv;
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not 'key = value'");
        }
        const std::string key =
            (section.empty() ? "" : section + ".") + trim(line.substr(0, eq));
        kv[key] = trim(line.substr(eq + 1));
    }

    RunConfig cfg;
    auto take = [&kv](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto get_double = [&](const std::string& key, double& slot) {
        if (auto v = take(key)) slot = std::stod(*v);
    };
    auto get_int = [&](const std::string& key, int& slot) {
        if (auto v = take(key)) slot = std::stoi(*v);
    };
    auto get_bool = [&](const std::string& key, bool& slot) {
        if (auto v = take(key)) slot = parse_bool(*v, key);
    };
    auto get_string = [&](const std::string& key, std::string& slot) {
        if (auto v = take(key)) slot = *v;
    };

    get_int("problem.dim", cfg.dim);
    get_double("problem.s", cfg.s);
    get_double("problem.q", cfg.q);
    get_double("problem.r", cfg.r);
    get_double("problem.nu", cfg.nu);
    get_double("problem.tau_g", cfg.tau_g);
    get_string("problem.weight", cfg.weight);
    get_string("problem.nonlinearity", cfg.nonlinearity);
    get_double("grid.radius", cfg.radius);
    get_double("grid.spacing", cfg.spacing);
    get_bool("grid.exterior", cfg.exterior);
    get_double("solver.tol", cfg.tol);
    get_int("solver.max_iter", cfg.max_iter);
    get_int("solver.restarts", cfg.restarts);
    if (auto v = take("solver.seed")) cfg.seed = std::stoull(*v);
    get_double("solver.sep", cfg.sep);
    get_double("multi.lambda", cfg.lambda);
    get_double("multi.lambda_factor", cfg.lambda_factor);
    get_double("multi.mu", cfg.mu);
    get_bool("multi.persistence", cfg.persistence);
    get_int("moser.n_steps", cfg.n_steps);
    get_string("output.dir", cfg.out_dir);
    get_bool("output.dump_matrix", cfg.dump_matrix);

    if (!kv.empty()) {
        throw std::invalid_argument("config: unknown key '" + kv.begin()->first + "'");
    }
    return cfg;
}

void RunConfig::apply_overrides(std::optional<std::uint64_t> seed_override,
                                std::optional<double> tol_override,
                                std::optional<std::string> out_override) {
    if (seed_override) seed = *seed_override;
    if (tol_override) tol = *tol_override;
    if (out_override) out_dir = *out_override;
}

double RunConfig::crit() const { return 2.0 * dim / (dim - 2.0 * s); }

std::vector<std::string> RunConfig::validate() const {
    std::vector<std::string> bad;
    if (dim != 1 && dim != 2) bad.push_back("problem.dim must be 1 or 2");
    if (!(s > 0.0 && s < 1.0)) bad.push_back("problem.s must lie in (0,1)");
    if ((dim == 1 || dim == 2) && s > 0.0 && s < 1.0) {
        if (!(2.0 * s < dim)) {
            bad.push_back("problem.s must satisfy 2s < N");
        } else {
            const double c = crit();
            if (!(q > 2.0 && q < c)) {
                bad.push_back("problem.q must satisfy 2 < q < crit = " + std::to_string(c));
            }
            if (!(nu > q && nu < c)) {
                bad.push_back("problem.nu must satisfy q < nu < crit");
            }
            if (!(r > q && r <= c)) {
                bad.push_back("problem.r must satisfy q < r <= crit");
            }
        }
    }
    if (!(tau_g > 1.0 && tau_g < 2.0)) bad.push_back("problem.tau_g must lie in (1,2)");
    if (!(weight == "gaussian" || weight == "constant" || weight.rfind("csv:", 0) == 0)) {
        bad.push_back("problem.weight must be gaussian, constant or csv:PATH");
    }
    if (!(nonlinearity == "default" || nonlinearity.rfind("csv:", 0) == 0)) {
        bad.push_back("problem.nonlinearity must be default or csv:PATH");
    }
    if (!(radius > 0.0)) bad.push_back("grid.radius must be positive");
    if (!(spacing > 0.0 && spacing < 2.0 * radius)) {
        bad.push_back("grid.spacing must satisfy 0 < h < 2R");
    }
    if (!(tol > 0.0)) bad.push_back("solver.tol must be positive");
    if (max_iter < 1) bad.push_back("solver.max_iter must be >= 1");
    if (restarts < 0) bad.push_back("solver.restarts must be >= 0");
    if (!(sep > 0.0)) bad.push_back("solver.sep must be positive");
    if (!(lambda >= 0.0)) bad.push_back("multi.lambda must be >= 0 (0 = derive from theta)");
    if (!(lambda_factor > 0.0)) bad.push_back("multi.lambda_factor must be positive");
    if (!(mu >= 0.0)) bad.push_back("multi.mu must be >= 0");
    if (n_steps < 1) bad.push_back("moser.n_steps must be >= 1");
    return bad;
}

}  // namespace fraclap
