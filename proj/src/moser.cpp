#include "fraclap/moser.hpp"

#include <cmath>
#include <stdexcept>

namespace fraclap {

double moser_exponent_r(const FracParams& params, double nu) {
    if (!(params.q < nu && nu < params.crit)) {
        throw std::invalid_argument("moser_exponent_r: requires q < nu < crit");
    }
    const double crit = params.crit;
    const double q = params.q;
    const double eta = nu / (nu - 1.0) * crit / (crit - q);
    const double eta_p = eta / (eta - 1.0);
    const double denom = crit - (q - 2.0) * eta_p;
    if (!(denom > 0.0)) {
        throw std::invalid_argument("moser_exponent_r: exponent formula degenerates");
    }
    const double r = 2.0 * crit * eta_p / denom;
    if (!(r > 1.0 && r < crit)) {
        throw std::invalid_argument("moser_exponent_r: parameters give r outside (1, crit)");
    }
    // conjugate-exponent identity the iteration relies on
    const double x = r / (2.0 * eta_p);
    const double identity = x / (x - 1.0) * eta_p * (q - 2.0);
    if (std::abs(identity - crit) > 1e-9 * crit) {
        throw std::logic_error("moser_exponent_r: conjugate identity violated");
    }
    return r;
}

MoserLadder ladder(const GridFunction& u, const FracParams& params, double r_exp, int n_steps) {
    if (n_steps < 1) {
        throw std::invalid_argument("ladder: n_steps must be >= 1");
    }
    if (!(r_exp > 1.0 && r_exp < params.crit)) {
        throw std::invalid_argument("ladder: r must lie in (1, crit)");
    }
    MoserLadder out;
    out.r_exp = r_exp;
    out.sup_actual = linf_norm(u);
    const double base_norm = lp_norm(u, params.crit);
    out.zero_input = base_norm == 0.0;

    const double growth = params.crit / r_exp;
    double factor = 1.0;
    double prev = base_norm;
    for (int n = 1; n <= n_steps; ++n) {
        factor *= growth;
        const double k_n = factor - 1.0;
        const double exponent = factor * params.crit;
        const double nrm = lp_norm(u, exponent);
        out.k_seq.push_back(k_n);
        out.exponents.push_back(exponent);
        out.norms.push_back(nrm);
        out.ratios.push_back(prev > 0.0 ? nrm / prev : 0.0);
        prev = nrm;
    }
    if (!out.zero_input) {
        double c = 0.0;
        for (double nrm : out.norms) c = std::max(c, nrm / base_norm);
        out.fitted_c = c;
        out.sup_bound = c * base_norm;
    }
    return out;
}

double bracket_factor(double z) {
    if (!(z > 0.0)) {
        throw std::invalid_argument("bracket_factor: z must be positive");
    }
    // evaluate in log space; the direct power overflows for huge z
    const double log_ratio = std::log(z + 1.0) - 0.5 * std::log(2.0 * z + 1.0);
    return std::exp(log_ratio / std::sqrt(z + 1.0));
}

GridFunction cutoff(const GridFunction& u, double big_m) {
    if (!(big_m > 0.0)) {
        throw std::invalid_argument("cutoff: M must be positive");
    }
    GridFunction out = u;
    for (double& v : out.values) v = std::min(v, big_m);
    return out;
}

ChainCheck chain_check(const GridFunction& u, double lambda, const Weight& w,
                       const FracParams& params, const BilinearForm& form, double big_m,
                       double k, double tol) {
    if (!(k > 0.0)) {
        throw std::invalid_argument("chain_check: k must be positive");
    }
    GridFunction v = u;
    for (double& x : v.values) x = std::abs(x);
    const GridFunction v_m = cutoff(v, big_m);

    GridFunction v_m_k1 = v_m;       // v_M^{k+1}
    GridFunction v_m_2k1 = v_m;      // v_M^{2k+1}
    for (std::size_t i = 0; i < v_m.size(); ++i) {
        v_m_k1.values[i] = std::pow(v_m.values[i], k + 1.0);
        v_m_2k1.values[i] = std::pow(v_m.values[i], 2.0 * k + 1.0);
    }

    ChainCheck out;
    out.lhs = (2.0 * k + 1.0) / ((k + 1.0) * (k + 1.0)) * form(v_m_k1, v_m_k1);
    out.mid = form(v, v_m_2k1);

    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += std::abs(w.values.values[i]) * std::pow(v.values[i], params.q - 1.0) *
               v_m_2k1.values[i];
    }
    out.rhs = lambda * acc * u.grid->cell_volume();

    const double slack = tol * std::max({1.0, std::abs(out.lhs), std::abs(out.mid),
                                         std::abs(out.rhs)});
    out.holds = out.lhs <= out.mid + slack && out.mid <= out.rhs + slack;
    return out;
}

}  // namespace fraclap
