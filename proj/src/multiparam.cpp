#include "fraclap/multiparam.hpp"

#include <algorithm>
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

GridFunction bump(const std::shared_ptr<const Grid>& grid, double width) {
    GridFunction u(grid);
    const double inv = 1.0 / (2.0 * width * width);
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const Point& x = grid->node(i);
        u.values[i] = std::exp(-(x[0] * x[0] + x[1] * x[1]) * inv);
    }
    return u;
}

// h^N (lambda f(x_i, u_i) + mu g(x_i, u_i))
Eigen::VectorXd reaction_rhs(const TwoParamProblem& pb, const GridFunction& u) {
    const double hn = u.grid->cell_volume();
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Point& x = u.grid->node(i);
        rhs(static_cast<Eigen::Index>(i)) =
            hn * (pb.lambda * pb.f.evaluate(x, u.values[i]) + pb.mu * pb.g.evaluate(x, u.values[i]));
    }
    return rhs;
}

struct DescentResult {
    GridFunction u;
    double energy_value = 0.0;
    double residual = 0.0;
    bool converged = false;
    bool runaway = false;
};

DescentResult descend(GridFunction u, const TwoParamProblem& pb, const BilinearForm& form,
                      const SolverOptions& opts) {
    const double norm_cap = 1e4 * std::max(1.0, seminorm(form, u));
    double en = energy(pb, u, form);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const Eigen::VectorXd defect = form.matrix() * as_vec(u) - reaction_rhs(pb, u);
        const double res = defect.cwiseAbs().maxCoeff() / std::max(1.0, seminorm(form, u));
        if (res <= opts.tol) {
            return {std::move(u), en, res, true, false};
        }
        const Eigen::VectorXd dir = -form.solve(defect);
        const double dir_deriv = defect.dot(dir);  // negative

        double alpha = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            GridFunction trial = from_vec(u.grid, as_vec(u) + alpha * dir);
            const double et = energy(pb, trial, form);
            if (et <= en + 1e-4 * alpha * dir_deriv) {
                u = std::move(trial);
                en = et;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            const double final_res =
                (form.matrix() * as_vec(u) - reaction_rhs(pb, u)).cwiseAbs().maxCoeff() /
                std::max(1.0, seminorm(form, u));
            return {std::move(u), en, final_res, final_res <= opts.tol, false};
        }
        if (seminorm(form, u) > norm_cap) {
            return {std::move(u), en, std::numeric_limits<double>::quiet_NaN(), false, true};
        }
    }
    const double res = weak_residual_two_param(pb, u, form);
    return {std::move(u), en, res, res <= opts.tol, false};
}

PointClass classify(const TwoParamProblem& pb, const GridFunction& u, const BilinearForm& form,
                    double en, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double eps = 1e-3 * std::max(1.0, linf_norm(u));
    const double slack = 1e-12 * std::max(1.0, std::abs(en));
    bool any_decrease = false;
    for (int k = 0; k < 8; ++k) {
        GridFunction v(u.grid);
        for (double& x : v.values) x = gauss(rng);
        const double nv = std::sqrt(dot_l2h(v, v));
        if (nv == 0.0) continue;
        const double scale = eps / nv;
        const double e_plus = energy(pb, u + scale * v, form);
        const double e_minus = energy(pb, u - scale * v, form);
        if (e_plus < en - slack || e_minus < en - slack) {
            any_decrease = true;
            break;
        }
    }
    return any_decrease ? PointClass::saddle_candidate : PointClass::minimizer;
}

double l2h_distance(const GridFunction& a, const GridFunction& b) {
    const GridFunction d = a - b;
    return std::sqrt(dot_l2h(d, d));
}

// best scale along the ray {c u}: coarse log scan plus golden refinement
double best_ray_ratio(const GridFunction& u, const Nonlinearity& f, const BilinearForm& form,
                      double* best_c) {
    const double t2 = form(u, u);
    if (!(t2 > 0.0)) return -std::numeric_limits<double>::infinity();
    auto ratio = [&](double c) { return big_j(c * u, f) / (c * c * t2); };

    double c_best = 1.0;
    double r_best = -std::numeric_limits<double>::infinity();
    const int n_scan = 121;
    for (int i = 0; i < n_scan; ++i) {
        const double c = std::pow(10.0, -3.0 + 6.0 * i / (n_scan - 1.0));
        const double r = ratio(c);
        if (r > r_best) {
            r_best = r;
            c_best = c;
        }
    }
    // golden-section refinement around the scan optimum
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = c_best / 1.2, hi = c_best * 1.2;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = ratio(x1), f2 = ratio(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = ratio(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = ratio(x1);
        }
    }
    const double c_ref = 0.5 * (lo + hi);
    const double r_ref = ratio(c_ref);
    if (r_ref > r_best) {
        r_best = r_ref;
        c_best = c_ref;
    }
    if (best_c) *best_c = c_best;
    return r_best;
}

}  // namespace

TwoParamProblem::TwoParamProblem(Nonlinearity f_, Nonlinearity g_, double lambda_, double mu_,
                                 FracParams params_, double r_)
    : f(std::move(f_)), g(std::move(g_)), lambda(lambda_), mu(mu_), params(params_), r(r_) {
    if (!(params.q < std::min(r, params.crit))) {
        throw std::invalid_argument("TwoParamProblem: requires 2 < q < min(r, crit)");
    }
    if (!(r <= params.crit)) {
        throw std::invalid_argument("TwoParamProblem: r must not exceed crit");
    }
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("TwoParamProblem: lambda must be positive");
    }
    if (!(mu >= 0.0)) {
        throw std::invalid_argument("TwoParamProblem: mu must be nonnegative");
    }
}

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::minimizer: return "minimizer";
        case PointClass::saddle_candidate: return "saddle-candidate";
        default: return "unknown";
    }
}

ThetaResult estimate_theta(const Nonlinearity& f, const FracParams& params,
                           const BilinearForm& form, const SolverOptions& opts) {
    const auto& grid = form.grid();
    if (!form.exterior()) {
        throw std::invalid_argument("estimate_theta: needs the exterior form");
    }

    std::vector<GridFunction> starts;
    starts.push_back(bump(grid, grid->radius() / 4.0));
    starts.push_back(-1.0 * starts.front());
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < opts.restarts; ++k) {
        GridFunction u(grid);
        for (double& x : u.values) x = gauss(rng);
        starts.push_back(std::move(u));
    }

    ThetaResult out;
    out.best_ratio = -std::numeric_limits<double>::infinity();
    bool admissible = false;
    for (auto& start : starts) {
        double c = 1.0;
        double r_cur = best_ray_ratio(start, f, form, &c);
        if (!(r_cur > 0.0)) continue;  // no positive int F on this ray
        GridFunction u = c * start;
        admissible = true;

        int iter = 0;
        for (; iter < opts.max_iter; ++iter) {
            const double t2 = form(u, u);
            const double j = big_j(u, f);
            const double hn = grid->cell_volume();
            Eigen::VectorXd fvec(static_cast<Eigen::Index>(u.size()));
            for (std::size_t i = 0; i < u.size(); ++i) {
                fvec(static_cast<Eigen::Index>(i)) = hn * f.evaluate(grid->node(i), u.values[i]);
            }
            const Eigen::VectorXd dir_v = form.solve(fvec) - (2.0 * j / t2) * as_vec(u);
            const GridFunction dir = from_vec(grid, dir_v);

            double alpha = 1.0;
            bool accepted = false;
            double r_new = r_cur;
            for (int ls = 0; ls < 60; ++ls) {
                const GridFunction trial = u + alpha * dir;
                const double tt2 = form(trial, trial);
                if (tt2 > 0.0) {
                    const double rr = big_j(trial, f) / tt2;
                    if (rr > r_cur) {
                        u = trial;
                        r_new = rr;
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if (!accepted) break;
            // exact scale refresh along the new ray
            double c2 = 1.0;
            const double rs = best_ray_ratio(u, f, form, &c2);
            if (rs > r_new) {
                u = c2 * u;
                r_new = rs;
            }
            const double improve = (r_new - r_cur) / std::abs(r_new);
            r_cur = r_new;
            if (improve < 1e-11) break;
        }
        if (r_cur > out.best_ratio) {
            out.best_ratio = r_cur;
            out.attainer = u;
            out.iterations = iter;
        }
    }
    if (!admissible || !(out.best_ratio > 0.0)) {
        throw std::runtime_error("estimate_theta: admissible set empty (no probe has int F > 0)");
    }
    out.theta = 1.0 / (2.0 * out.best_ratio);
    return out;
}

double energy(const TwoParamProblem& problem, const GridFunction& u, const BilinearForm& form) {
    double e = phi(u, form) - problem.lambda * big_j(u, problem.f);
    if (problem.mu != 0.0) e -= problem.mu * big_j(u, problem.g);
    return e;
}

GridFunction energy_gradient(const TwoParamProblem& problem, const GridFunction& u,
                             const BilinearForm& form) {
    GridFunction g = apply_operator(form, u);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Point& x = u.grid->node(i);
        g.values[i] -= problem.lambda * problem.f.evaluate(x, u.values[i]);
        if (problem.mu != 0.0) g.values[i] -= problem.mu * problem.g.evaluate(x, u.values[i]);
    }
    return g;
}

double weak_residual_two_param(const TwoParamProblem& problem, const GridFunction& u,
                               const BilinearForm& form) {
    const Eigen::VectorXd defect = form.matrix() * as_vec(u) - reaction_rhs(problem, u);
    return defect.cwiseAbs().maxCoeff() / std::max(1.0, seminorm(form, u));
}

MultiResult find_critical_points(const TwoParamProblem& problem, const BilinearForm& form,
                                 const SolverOptions& opts, double theta_hat) {
    const auto& grid = form.grid();
    if (!form.exterior()) {
        throw std::invalid_argument("find_critical_points: needs the exterior form");
    }

    struct Candidate {
        DescentResult res;
        int start_index;
    };
    std::vector<Candidate> candidates;

    std::vector<GridFunction> starts;
    starts.push_back(bump(grid, grid->radius() / 4.0));
    starts.push_back(-1.0 * starts.front());
    std::mt19937_64 rng(opts.seed + 17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < opts.restarts; ++k) {
        GridFunction u(grid);
        for (double& x : u.values) x = gauss(rng);
        starts.push_back(std::move(u));
    }

    int converged = 0;
    for (std::size_t k = 0; k < starts.size(); ++k) {
        DescentResult r = descend(starts[k], problem, form, opts);
        if (r.converged) {
            ++converged;
            candidates.push_back({std::move(r), static_cast<int>(k)});
        }
    }
    const int starts_total = static_cast<int>(starts.size());
    if (converged == 0) {
        throw std::runtime_error("find_critical_points: no start converged");
    }

    // mountain-pass probe between zero and the best nonzero minimizer
    const Candidate* best_nonzero = nullptr;
    for (const auto& c : candidates) {
        if (std::sqrt(dot_l2h(c.res.u, c.res.u)) > opts.sep &&
            (!best_nonzero || c.res.energy_value < best_nonzero->res.energy_value)) {
            best_nonzero = &c;
        }
    }
    if (best_nonzero) {
        const GridFunction& ustar = best_nonzero->res.u;
        double t_lo = 0.0, t_hi = 1.0;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = t_hi - gr * (t_hi - t_lo), x2 = t_lo + gr * (t_hi - t_lo);
        auto ray_energy = [&](double t) { return energy(problem, t * ustar, form); };
        double f1 = ray_energy(x1), f2 = ray_energy(x2);
        for (int it = 0; it < 60; ++it) {
            if (f1 > f2) {  // maximizing
                t_hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = t_hi - gr * (t_hi - t_lo);
                f1 = ray_energy(x1);
            } else {
                t_lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = t_lo + gr * (t_hi - t_lo);
                f2 = ray_energy(x2);
            }
        }
        const double t_mp = 0.5 * (t_lo + t_hi);
        GridFunction probe = t_mp * ustar;
        // nudge off the ridge before relaxing
        GridFunction noise(grid);
        for (double& x : noise.values) x = gauss(rng);
        const double nn = std::sqrt(dot_l2h(noise, noise));
        if (nn > 0.0) {
            const double amp = 1e-2 * std::max(1e-6, std::sqrt(dot_l2h(probe, probe)));
            probe = probe + (amp / nn) * noise;
        }
        DescentResult r = descend(probe, problem, form, opts);
        if (r.converged) candidates.push_back({std::move(r), 100});
    }

    // odd symmetry pair: the mirror of a critical point is critical
    if (problem.f.odd && problem.g.odd) {
        const std::size_t n0 = candidates.size();
        for (std::size_t k = 0; k < n0; ++k) {
            GridFunction mirror = -1.0 * candidates[k].res.u;
            const double res = weak_residual_two_param(problem, mirror, form);
            if (res <= opts.tol) {
                const double en = energy(problem, mirror, form);
                candidates.push_back(
                    {{std::move(mirror), en, res, true, false}, 200 + candidates[k].start_index});
            }
        }
    }

    std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.res.energy_value != b.res.energy_value) {
            return a.res.energy_value < b.res.energy_value;
        }
        return a.start_index < b.start_index;
    });

    MultiResult out;
    out.starts_converged = converged;
    out.starts_total = starts_total;
    out.regime = problem.lambda > theta_hat ? "inside" : "outside-theorem-regime";

    // zero is always stationary: f(x,0) = g(x,0) = 0
    GridFunction zero(grid);
    const PointClass zero_class = classify(problem, zero, form, 0.0, opts.seed + 31);
    out.points.push_back({std::move(zero), 0.0, 0.0, zero_class, -1});

    for (auto& c : candidates) {
        bool dup = false;
        for (const auto& kept : out.points) {
            if (l2h_distance(c.res.u, kept.u) <= opts.sep) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        CriticalPoint pt;
        pt.energy = c.res.energy_value;
        pt.grad_norm = c.res.residual;
        pt.start_index = c.start_index;
        pt.classification = classify(problem, c.res.u, form, c.res.energy_value,
                                     opts.seed + 31 + static_cast<std::uint64_t>(c.start_index));
        pt.u = std::move(c.res.u);
        out.points.push_back(std::move(pt));
    }
    return out;
}

PersistenceResult persistence_bisection(const TwoParamProblem& problem, const BilinearForm& form,
                                        const SolverOptions& opts, const GridFunction& u_plus,
                                        const GridFunction& u_minus, double mu_cap) {
    PersistenceResult out;
    auto persists = [&](double mu) {
        TwoParamProblem pb = problem;
        pb.mu = mu;
        DescentResult a = descend(u_plus, pb, form, opts);
        DescentResult b = descend(u_minus, pb, form, opts);
        const bool ok = a.converged && b.converged &&
                        std::sqrt(dot_l2h(a.u, a.u)) > opts.sep &&
                        std::sqrt(dot_l2h(b.u, b.u)) > opts.sep &&
                        l2h_distance(a.u, b.u) > opts.sep;
        out.sweep.emplace_back(mu, ok);
        return ok;
    };

    double lo = 0.0;  // mu = 0 persists by hypothesis (the inputs solve it)
    double hi = 0.0;
    double probe = 1e-2;
    while (probe <= mu_cap) {
        if (!persists(probe)) {
            hi = probe;
            break;
        }
        lo = probe;
        probe *= 4.0;
    }
    if (hi == 0.0) {
        out.mu_hat = lo;
        out.capped = true;
        return out;
    }
    for (int it = 0; it < 30 && (hi - lo) > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (persists(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.mu_hat = lo;
    return out;
}

}  // namespace fraclap
