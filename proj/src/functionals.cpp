#include "fraclap/functionals.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fraclap {

namespace {

double gauss_bump(const Point& x) { return std::exp(-(x[0] * x[0] + x[1] * x[1])); }

// sign(t) |t|^(p-1), the odd power map; continuous at 0 for p > 1
double odd_pow(double t, double p) {
    if (t == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(t), p - 1.0), t);
}

}  // namespace

Weight::Weight(GridFunction w, double nu_, const FracParams& params)
    : values(std::move(w)), nu(nu_) {
    if (!(params.q < nu && nu < params.crit)) {
        throw std::invalid_argument("Weight: nu must satisfy q < nu < crit");
    }
    bool positive_somewhere = false;
    for (double v : values.values) {
        if (v > 0.0) {
            positive_somewhere = true;
            break;
        }
    }
    if (!positive_somewhere) {
        throw std::invalid_argument("Weight: w must be positive on at least one node");
    }
    const double tau_lo = params.crit / (params.crit - params.q);
    tau_range = {tau_lo, nu / (nu - 1.0) * tau_lo};
    tau_norms = {lp_norm(values, tau_range[0]), lp_norm(values, tau_range[1])};
}

Weight Weight::gaussian(const std::shared_ptr<const Grid>& grid, double nu,
                        const FracParams& params) {
    GridFunction w(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) w.values[i] = gauss_bump(grid->node(i));
    return Weight(std::move(w), nu, params);
}

Weight Weight::constant(const std::shared_ptr<const Grid>& grid, double value, double nu,
                        const FracParams& params) {
    GridFunction w(grid);
    for (double& v : w.values) v = value;
    return Weight(std::move(w), nu, params);
}

Nonlinearity Nonlinearity::saturating(double q, double tau_g) {
    if (!(q > 2.0)) throw std::invalid_argument("Nonlinearity::saturating: q must exceed 2");
    if (!(tau_g > 1.0 && tau_g < 2.0)) {
        throw std::invalid_argument("Nonlinearity::saturating: tau_g must lie in (1,2)");
    }
    Nonlinearity f;
    f.evaluate = [q, tau_g](const Point& x, double t) {
        if (t == 0.0) return 0.0;
        const double a = std::abs(t);
        const double p = std::min(std::pow(a, q - 1.0), std::pow(a, tau_g - 1.0));
        return gauss_bump(x) * std::copysign(p, t);
    };
    // |t| <= 1: F = m |t|^q / q; beyond, the saturated branch takes over
    f.primitive = [q, tau_g](const Point& x, double t) {
        const double a = std::abs(t);
        const double base = a <= 1.0 ? std::pow(a, q) / q
                                     : 1.0 / q + (std::pow(a, tau_g) - 1.0) / tau_g;
        return gauss_bump(x) * base;
    };
    f.bound_fn = gauss_bump;
    f.exponent = q - 1.0;
    f.growth_tau = tau_g;
    f.rho = gauss_bump;
    f.growth_big_m = 1.0 / tau_g;
    f.odd = true;
    f.label = "saturating(q=" + std::to_string(q) + ",tau=" + std::to_string(tau_g) + ")";
    return f;
}

Nonlinearity Nonlinearity::odd_power(double r) {
    if (!(r > 1.0)) throw std::invalid_argument("Nonlinearity::odd_power: r must exceed 1");
    Nonlinearity g;
    g.evaluate = [r](const Point& x, double t) { return gauss_bump(x) * odd_pow(t, r); };
    g.primitive = [r](const Point& x, double t) {
        return gauss_bump(x) * std::pow(std::abs(t), r) / r;
    };
    g.bound_fn = gauss_bump;
    g.exponent = r - 1.0;
    g.odd = true;
    g.label = "odd_power(r=" + std::to_string(r) + ")";
    return g;
}

double weighted_q_integral(const GridFunction& u, const Weight& w, double q) {
    if (u.size() != w.values.size()) {
        throw std::invalid_argument("weighted_q_integral: grid mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += w.values.values[i] * std::pow(std::abs(u.values[i]), q);
    }
    return acc * u.grid->cell_volume();
}

double quotient(const GridFunction& u, const Weight& w, const FracParams& params,
                const BilinearForm& form) {
    const double t2 = form(u, u);
    if (!(t2 > 0.0)) {
        throw std::invalid_argument("quotient: undefined at functions with zero seminorm");
    }
    const double t = std::sqrt(t2);
    return weighted_q_integral(u, w, params.q) / (t2 + std::pow(t, params.crit));
}

double phi(const GridFunction& u, const BilinearForm& form) { return 0.5 * form(u, u); }

double big_j(const GridFunction& u, const Nonlinearity& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += f.primitive(u.grid->node(i), u.values[i]);
    }
    return acc * u.grid->cell_volume();
}

double psi(const GridFunction& u, const GridFunction& g_weight, double r) {
    if (!(r > 1.0) || std::isinf(r)) {
        throw std::invalid_argument("psi: r must lie in (1, infinity)");
    }
    if (u.size() != g_weight.size()) {
        throw std::invalid_argument("psi: grid mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += g_weight.values[i] * std::pow(std::abs(u.values[i]), r);
    }
    return acc * u.grid->cell_volume() / r;
}

GridFunction grad_phi(const GridFunction& u, const BilinearForm& form) {
    return apply_operator(form, u);
}

GridFunction grad_big_j(const GridFunction& u, const Nonlinearity& f) {
    GridFunction out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) {
        out.values[i] = f.evaluate(u.grid->node(i), u.values[i]);
    }
    return out;
}

GridFunction grad_psi(const GridFunction& u, const GridFunction& g_weight, double r) {
    GridFunction out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) {
        out.values[i] = g_weight.values[i] * odd_pow(u.values[i], r);
    }
    return out;
}

std::size_t certify_growth(const Nonlinearity& f, const Grid& grid, std::size_t samples,
                           double t_span, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-grid.radius(), grid.radius());
    std::uniform_real_distribution<double> span(-t_span, t_span);
    std::size_t violations = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        const Point x{coord(rng), grid.dim() == 2 ? coord(rng) : 0.0};
        const double t = span(rng);
        const double lhs = std::abs(f.evaluate(x, t));
        const double rhs = f.bound_fn(x) * std::pow(std::abs(t), f.exponent);
        if (lhs > rhs + 1e-12 * std::max(1.0, rhs)) ++violations;
    }
    return violations;
}

double primitive_defect(const Nonlinearity& f, const Grid& grid, std::size_t samples,
                        double t_span, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-grid.radius(), grid.radius());
    std::uniform_real_distribution<double> span(-t_span, t_span);
    const double eps = 1e-6;
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const Point x{coord(rng), grid.dim() == 2 ? coord(rng) : 0.0};
        const double t = span(rng);
        const double fd = (f.primitive(x, t + eps) - f.primitive(x, t - eps)) / (2.0 * eps);
        const double exact = f.evaluate(x, t);
        worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
    return worst;
}

}  // namespace fraclap
