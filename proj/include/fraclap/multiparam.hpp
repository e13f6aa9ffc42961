#pragma once

#include <string>
#include <vector>

#include "fraclap/eigensolver.hpp"
#include "fraclap/form.hpp"
#include "fraclap/functionals.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

/// Two-parameter problem data: primary nonlinearity f, perturbation g,
/// parameters lambda > 0, mu >= 0 and the exponent r of the perturbation
/// with 2 < q < min(r, crit).
struct TwoParamProblem {
    Nonlinearity f;
    Nonlinearity g;
    double lambda = 1.0;
    double mu = 0.0;
    FracParams params;
    double r = 0.0;

    TwoParamProblem(Nonlinearity f, Nonlinearity g, double lambda, double mu, FracParams params,
                    double r);
};

enum class PointClass { minimizer, saddle_candidate, unknown };

const char* to_string(PointClass c);

struct CriticalPoint {
    GridFunction u;
    double energy = 0.0;
    double grad_norm = 0.0;  // normalized weak residual at acceptance
    PointClass classification = PointClass::unknown;
    int start_index = -1;    // -1 marks the always-present zero point
};

struct ThetaResult {
    double theta = 0.0;       // half the infimum of [u]^2 / int F
    GridFunction attainer;    // best probed function
    double best_ratio = 0.0;  // max of int F / [u]^2 over the search
    int iterations = 0;
};

/// Estimates theta = inf over {int F > 0} of [u]^2 / (2 int F) by
/// maximizing the reciprocal ratio with ascent in the form metric plus an
/// exact one-dimensional scale search along each iterate's ray. Throws if
/// no probed function has a positive integral of F.
ThetaResult estimate_theta(const Nonlinearity& f, const FracParams& params,
                           const BilinearForm& form, const SolverOptions& opts);

/// E_{lambda,mu}(u) = Phi(u) - lambda J(u) - mu Psi(u), with J and Psi the
/// primitive integrals of f and g.
double energy(const TwoParamProblem& problem, const GridFunction& u, const BilinearForm& form);

/// L^2-representative of the energy derivative.
GridFunction energy_gradient(const TwoParamProblem& problem, const GridFunction& u,
                             const BilinearForm& form);

/// max_i |E(u,e_i) - h^N (lambda f(x_i,u_i) + mu g(x_i,u_i))|, normalized
/// by max(1, seminorm(u)).
double weak_residual_two_param(const TwoParamProblem& problem, const GridFunction& u,
                               const BilinearForm& form);

struct MultiResult {
    std::vector<CriticalPoint> points;  // deduplicated, zero point included
    std::string regime;                 // "inside" or "outside-theorem-regime"
    int starts_converged = 0;
    int starts_total = 0;
};

/// Energy descent from a bump start, its negative, opts.restarts random
/// starts and a mountain-pass probe between zero and the best minimizer.
/// Points with weak residual <= opts.tol are kept, deduplicated at
/// pairwise discrete L^2 distance opts.sep. The zero function (always
/// stationary) is reported first. theta_hat only informs the regime flag.
MultiResult find_critical_points(const TwoParamProblem& problem, const BilinearForm& form,
                                 const SolverOptions& opts, double theta_hat);

struct PersistenceResult {
    double mu_hat = 0.0;
    bool capped = false;  // search never saw a failure; mu_hat is the cap
    std::vector<std::pair<double, bool>> sweep;  // probed (mu, persisted)
};

/// Bisects the largest mu in [0, cap] for which continuation of the given
/// mu = 0 solution pair still converges to two distinct nonzero points.
PersistenceResult persistence_bisection(const TwoParamProblem& problem, const BilinearForm& form,
                                        const SolverOptions& opts, const GridFunction& u_plus,
                                        const GridFunction& u_minus, double mu_cap = 1e6);

}  // namespace fraclap
