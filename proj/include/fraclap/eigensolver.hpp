#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fraclap/form.hpp"
#include "fraclap/functionals.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

struct SolverOptions {
    double tol = 1e-8;
    int max_iter = 10000;
    int restarts = 2;         // random restarts in addition to the bump start
    std::uint64_t seed = 0;
    double sep = 1e-3;        // L^2 deduplication distance (multiparam)
};

/// Accepted maximizer of the quotient together with its eigenvalue.
struct EigenPair {
    GridFunction u;
    double lambda = 0.0;
    double quotient_value = 0.0;
    double residual = 0.0;     // normalized weak-form defect at acceptance
    int iterations = 0;
    int restart_index = 0;     // which start produced the winner
    std::vector<double> candidate_quotients;  // per-start stationary values
    std::vector<double> quotient_trace;       // accepted values of the winning run
};

/// The seminorm every stationary point of the quotient carries:
/// ((q-2)/(crit-q))^(1/(crit-2)).
double target_seminorm(const FracParams& params);

/// Optimal scaling along the ray {c v : c > 0}: returns c > 0 maximizing
/// quotient(c v) together with u = c v. The scaled function satisfies
/// seminorm(u) = target_seminorm(params) by the one-dimensional
/// stationarity condition. Requires seminorm(v) > 0 and a positive
/// weighted integral of |v|^q.
std::pair<double, GridFunction> ray_scale(const GridFunction& v, const Weight& w,
                                          const FracParams& params, const BilinearForm& form);

/// Eigenvalue formula
///   lambda = q ([u]^2 + [u]^crit) / ((2 + crit [u]^(crit-2)) int w|u|^q).
/// At the ray-scaled seminorm this reduces to [u]^2 / int w|u|^q, which is
/// the phi = u consistency identity E(u,u) = lambda int w|u|^q.
double lambda_from(const GridFunction& u, const Weight& w, const FracParams& params,
                   const BilinearForm& form);

/// Normalized weak-form defect: max over nodal test functions e_i of
/// |E(u, e_i) - lambda h^N w_i |u_i|^(q-2) u_i|, divided by
/// max(1, seminorm(u)).
double weak_residual(const GridFunction& u, double lambda, const Weight& w,
                     const FracParams& params, const BilinearForm& form);

/// Maximizes the quotient by gradient ascent in the metric of the form
/// (each step solves against the assembled matrix) with backtracking line
/// search, re-scaling to the optimal ray point after every accepted step.
/// Runs a positive-bump start plus opts.restarts random starts and keeps
/// the best stationary value, ties resolved by start order. Accepts when
/// the relative quotient improvement drops below opts.tol and the weak
/// residual is at most opts.tol; throws on non-convergence and when the
/// weight admits no admissible start.
EigenPair maximize_quotient(const Weight& w, const FracParams& params, const BilinearForm& form,
                            const SolverOptions& opts);

}  // namespace fraclap
