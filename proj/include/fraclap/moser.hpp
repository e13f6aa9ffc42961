#pragma once

#include <vector>

#include "fraclap/form.hpp"
#include "fraclap/functionals.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

/// Geometric exponent ladder k_n = (crit/r)^n - 1 with the discrete
/// L^((k_n+1) crit) norms of a fixed function, the successive ratios and
/// the fitted uniform constant.
struct MoserLadder {
    double r_exp = 0.0;
    std::vector<double> k_seq;
    std::vector<double> exponents;  // (k_n + 1) * crit
    std::vector<double> norms;
    std::vector<double> ratios;     // norms[n] / norms[n-1]
    double fitted_c = 0.0;          // smallest c with norms[n] <= c * ||u||_crit
    double sup_bound = 0.0;         // fitted_c * ||u||_crit
    double sup_actual = 0.0;        // ||u||_inf
    bool zero_input = false;
};

/// The iteration exponent r = 2 crit eta' / (crit - (q-2) eta') built from
/// eta = nu/(nu-1) * crit/(crit-q) and its conjugate eta'. Requires
/// q < nu < crit and checks 1 < r < crit plus the algebraic identity
/// (r/(2 eta'))' eta' (q-2) = crit before returning.
double moser_exponent_r(const FracParams& params, double nu);

/// Runs the ladder for n = 1..n_steps. For u = 0 all norms are zero and
/// the constant fit is skipped (fitted_c = 0, zero_input set).
MoserLadder ladder(const GridFunction& u, const FracParams& params, double r_exp, int n_steps);

/// ((z+1)/sqrt(2z+1))^(1/sqrt(z+1)) for z > 0; always > 1 with limit 1 at
/// infinity.
double bracket_factor(double z);

/// Pointwise min(u_i, M), M > 0.
GridFunction cutoff(const GridFunction& u, double big_m);

struct ChainCheck {
    double lhs = 0.0;  // (2k+1)/(k+1)^2 * [v_M^{k+1}]^2 with v = |u|
    double mid = 0.0;  // E(|u|, v_M^{2k+1})
    double rhs = 0.0;  // lambda h^N sum |w| |u|^{q-1} v_M^{2k+1}
    bool holds = false;
};

/// Discrete analogue of the iteration step inequality: for a discrete weak
/// solution u of the eigenvalue problem, the chain
///   (2k+1)/(k+1)^2 [v_M^{k+1}]^2 <= E(|u|, v_M^{2k+1})
///                                 <= lambda h^N sum |w||u|^{q-1} v_M^{2k+1}
/// holds with v = |u|, v_M = min(v, M). The first bound is an exact
/// pointwise-inequality consequence and must hold for any grid function;
/// the second uses the weak form, so its slack scales with the solver
/// residual (the tolerance argument absorbs it).
ChainCheck chain_check(const GridFunction& u, double lambda, const Weight& w,
                       const FracParams& params, const BilinearForm& form, double big_m,
                       double k, double tol = 1e-9);

}  // namespace fraclap
