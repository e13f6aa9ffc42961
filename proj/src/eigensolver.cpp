#include "fraclap/eigensolver.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fraclap {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vec(const GridFunction& u) {
    return {u.values.data(), static_cast<Eigen::Index>(u.values.size())};
}

GridFunction from_vec(const std::shared_ptr<const Grid>& grid, const Eigen::VectorXd& v) {
    GridFunction out(grid);
    for (Eigen::Index i = 0; i < v.size(); ++i) out.values[static_cast<std::size_t>(i)] = v(i);
    return out;
}

// h^N w_i |u_i|^(q-2) u_i, the right-hand side of the nodal weak form
Eigen::VectorXd weighted_power_rhs(const GridFunction& u, const Weight& w, double q) {
    const double hn = u.grid->cell_volume();
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double t = u.values[i];
        rhs(static_cast<Eigen::Index>(i)) =
            t == 0.0 ? 0.0
                     : hn * w.values.values[i] * std::copysign(std::pow(std::abs(t), q - 1.0), t);
    }
    return rhs;
}

GridFunction bump_start(const std::shared_ptr<const Grid>& grid, const Point& center,
                        double width) {
    GridFunction u(grid);
    const double inv = 1.0 / (2.0 * width * width);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const Point& x = grid->node(i);
        const double dx = x[0] - center[0];
        const double dy = x[1] - center[1];
        u.values[i] = std::exp(-(dx * dx + dy * dy) * inv);
    }
    return u;
}

struct AscentResult {
    GridFunction u;
    double quotient_value;
    double residual;
    int iterations;
    bool converged;
    std::vector<double> trace;  // accepted quotient values
};

AscentResult ascend(GridFunction u, const Weight& w, const FracParams& params,
                    const BilinearForm& form, const SolverOptions& opts) {
    const double hn = u.grid->cell_volume();
    double c = 0.0;
    std::tie(c, u) = ray_scale(u, w, params, form);
    double quot = quotient(u, w, params, form);
    double rel_improve = std::numeric_limits<double>::infinity();
    const double tstar = target_seminorm(params);
    std::vector<double> trace{quot};

    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        const double integral = weighted_q_integral(u, w, params.q);
        const double lambda = tstar * tstar / integral;
        const Eigen::VectorXd rhs = weighted_power_rhs(u, w, params.q);
        const Eigen::VectorXd defect = form.matrix() * as_vec(u) - lambda * rhs;
        const double residual = defect.cwiseAbs().maxCoeff() / std::max(1.0, tstar);

        if (residual <= opts.tol && rel_improve < opts.tol) {
            return {std::move(u), quot, residual, iter, true, std::move(trace)};
        }

        // ascent direction in the form metric; the unit step is the
        // inverse-iteration map u -> M^{-1}(lambda h^N w |u|^{q-2} u)
        const Eigen::VectorXd dir = -form.solve(defect);

        double alpha = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            Eigen::VectorXd trial_v = as_vec(u) + alpha * dir;
            GridFunction trial = from_vec(u.grid, trial_v);
            const double tt = seminorm(form, trial);
            if (tt > 0.0 && weighted_q_integral(trial, w, params.q) > 0.0) {
                auto [cc, scaled] = ray_scale(trial, w, params, form);
                const double qq = quotient(scaled, w, params, form);
                if (qq > quot) {
                    rel_improve = (qq - quot) / std::abs(qq);
                    u = std::move(scaled);
                    quot = qq;
                    trace.push_back(qq);
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            // stationary up to line-search resolution; accept only if the
            // weak form is actually satisfied
            return {std::move(u), quot, residual, iter, residual <= opts.tol,
                    std::move(trace)};
        }
    }
    const double integral = weighted_q_integral(u, w, params.q);
    const double res = weak_residual(u, tstar * tstar / integral, w, params, form);
    return {std::move(u), quot, res, iter, res <= opts.tol && rel_improve < opts.tol,
            std::move(trace)};
}

}  // namespace

double target_seminorm(const FracParams& params) {
    return std::pow((params.q - 2.0) / (params.crit - params.q), 1.0 / (params.crit - 2.0));
}

std::pair<double, GridFunction> ray_scale(const GridFunction& v, const Weight& w,
                                          const FracParams& params, const BilinearForm& form) {
    const double t = seminorm(form, v);
    if (!(t > 0.0)) {
        throw std::invalid_argument("ray_scale: direction has zero seminorm");
    }
    if (!(weighted_q_integral(v, w, params.q) > 0.0)) {
        throw std::invalid_argument("ray_scale: integral of w|v|^q must be positive");
    }
    const double c = target_seminorm(params) / t;
    return {c, c * v};
}

double lambda_from(const GridFunction& u, const Weight& w, const FracParams& params,
                   const BilinearForm& form) {
    const double integral = weighted_q_integral(u, w, params.q);
    if (!(integral > 0.0)) {
        throw std::invalid_argument("lambda_from: integral of w|u|^q must be positive");
    }
    const double t2 = form(u, u);
    const double t = std::sqrt(t2);
    const double tc = std::pow(t, params.crit);
    return params.q * (t2 + tc) / ((2.0 + params.crit * std::pow(t, params.crit - 2.0)) * integral);
}

double weak_residual(const GridFunction& u, double lambda, const Weight& w,
                     const FracParams& params, const BilinearForm& form) {
    const Eigen::VectorXd defect =
        form.matrix() * as_vec(u) - lambda * weighted_power_rhs(u, w, params.q);
    return defect.cwiseAbs().maxCoeff() / std::max(1.0, seminorm(form, u));
}

EigenPair maximize_quotient(const Weight& w, const FracParams& params, const BilinearForm& form,
                            const SolverOptions& opts) {
    const auto& grid = form.grid();
    if (!form.exterior()) {
        throw std::invalid_argument(
            "maximize_quotient: needs the exterior form (definite metric)");
    }
    double wmax = 0.0;
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
        if (w.values.values[i] > wmax) {
            wmax = w.values.values[i];
            argmax = i;
        }
    }
    if (!(wmax > 0.0)) {
        throw std::runtime_error("maximize_quotient: weight is nonpositive everywhere");
    }

    std::vector<GridFunction> starts;
    {
        // shrink the bump until the weighted integral is positive; in the
        // limit it concentrates at the node where w is largest
        double width = grid->radius() / 4.0;
        GridFunction bump = bump_start(grid, grid->node(argmax), width);
        for (int k = 0; k < 60 && !(weighted_q_integral(bump, w, params.q) > 0.0); ++k) {
            width *= 0.5;
            bump = bump_start(grid, grid->node(argmax), width);
        }
        if (!(weighted_q_integral(bump, w, params.q) > 0.0)) {
            throw std::runtime_error("maximize_quotient: no admissible start found");
        }
        starts.push_back(std::move(bump));
    }
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int r = 0; r < opts.restarts; ++r) {
        GridFunction u(grid);
        for (double& x : u.values) x = gauss(rng);
        if (weighted_q_integral(u, w, params.q) > 0.0 && seminorm(form, u) > 0.0) {
            starts.push_back(std::move(u));
        }
    }

    EigenPair best;
    bool have = false;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        AscentResult res = ascend(starts[k], w, params, form, opts);
        best.candidate_quotients.push_back(res.quotient_value);
        if (res.converged && (!have || res.quotient_value > best.quotient_value)) {
            best.u = std::move(res.u);
            best.quotient_value = res.quotient_value;
            best.residual = res.residual;
            best.iterations = res.iterations;
            best.restart_index = static_cast<int>(k);
            best.quotient_trace = std::move(res.trace);
            have = true;
        }
    }
    if (!have) {
        throw std::runtime_error("maximize_quotient: no start converged within max_iter");
    }
    best.lambda = lambda_from(best.u, w, params, form);
    return best;
}

}  // namespace fraclap
