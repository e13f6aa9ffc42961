#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "fraclap/form.hpp"
#include "fraclap/grid.hpp"

namespace fraclap {

/// Node samples of the weight w together with the declared integrability
/// metadata. Construction checks positivity on at least one node and
/// q < nu < crit; the L^tau norms over the declared range are recorded as
/// diagnostics (every L^tau norm is finite on a finite grid).
struct Weight {
    GridFunction values;
    double nu;
    std::array<double, 2> tau_range;       // [crit/(crit-q), nu/(nu-1) * crit/(crit-q)]
    std::array<double, 2> tau_norms;       // discrete L^tau norms at the range endpoints

    Weight(GridFunction w, double nu, const FracParams& params);

    /// w(x) = exp(-|x|^2): positive everywhere and integrable at any order.
    static Weight gaussian(const std::shared_ptr<const Grid>& grid, double nu,
                           const FracParams& params);

    /// Constant weight, handy in tests.
    static Weight constant(const std::shared_ptr<const Grid>& grid, double value, double nu,
                           const FracParams& params);
};

/// A Caratheodory nonlinearity together with its primitive, its dominating
/// function and growth metadata.
struct Nonlinearity {
    std::function<double(const Point&, double)> evaluate;   // f(x,t)
    std::function<double(const Point&, double)> primitive;  // F(x,t) = int_0^t f(x,.)
    std::function<double(const Point&)> bound_fn;           // m(x) resp. h(x)
    double exponent = 2.0;                                  // growth exponent q-1 resp. r-1
    double growth_tau = 0.0;                                // tau in (1,2) when declared, else 0
    std::function<double(const Point&)> rho;                // density paired with growth_tau
    double growth_big_m = 0.0;                              // the constant bounding F/(rho |t|^tau)
    bool odd = false;                                       // f(x,-t) = -f(x,t)
    std::string label;

    /// f(x,t) = m(x) sign(t) min(|t|^(q-1), |t|^(tau_g-1)) with
    /// m(x) = exp(-|x|^2). Grows like |t|^(q-1) near zero and saturates to
    /// the sublinear power tau_g - 1 < 1 at infinity, so F(x,t) is
    /// eventually dominated by m(x)|t|^tau_g / tau_g.
    static Nonlinearity saturating(double q, double tau_g);

    /// g(x,t) = h(x) |t|^(r-2) t with h(x) = exp(-|x|^2).
    static Nonlinearity odd_power(double r);
};

/// Quotient functional: integral of w |u|^q over ([u]^2 + [u]^crit).
/// Undefined at u = 0 (the seminorm must be positive).
double quotient(const GridFunction& u, const Weight& w, const FracParams& params,
                const BilinearForm& form);

/// (h^N sum_i w_i |u_i|^q) — the quotient numerator.
double weighted_q_integral(const GridFunction& u, const Weight& w, double q);

/// Phi(u) = E(u,u)/2
double phi(const GridFunction& u, const BilinearForm& form);

/// J(u) = h^N sum_i F(x_i, u_i)
double big_j(const GridFunction& u, const Nonlinearity& f);

/// Psi(u) = (1/r) h^N sum_i g_weight_i |u_i|^r, r > 1, g_weight >= 0.
double psi(const GridFunction& u, const GridFunction& g_weight, double r);

/// L^2-representatives of the derivatives: <grad, phi>_h equals the
/// directional derivative for every test direction phi.
GridFunction grad_phi(const GridFunction& u, const BilinearForm& form);
GridFunction grad_big_j(const GridFunction& u, const Nonlinearity& f);
GridFunction grad_psi(const GridFunction& u, const GridFunction& g_weight, double r);

/// Samples |f(x,t)| <= bound_fn(x) |t|^exponent at `samples` random (x,t)
/// pairs with |t| <= t_span and x random in the grid's ball. Returns the
/// number of violations beyond a 1e-12 relative slack.
std::size_t certify_growth(const Nonlinearity& f, const Grid& grid, std::size_t samples,
                           double t_span, std::uint64_t seed);

/// Central-difference check of the primitive: |dF/dt - f| at `samples`
/// random (x,t) pairs; returns the worst relative defect.
double primitive_defect(const Nonlinearity& f, const Grid& grid, std::size_t samples,
                        double t_span, std::uint64_t seed);

}  // namespace fraclap
