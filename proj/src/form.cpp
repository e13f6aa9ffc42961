#include "fraclap/form.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fraclap {

Kernel Kernel::fractional(int dim, double s) {
    if (!(s > 0.0 && s < 1.0)) {
        throw std::invalid_argument("Kernel::fractional: s must lie in (0,1)");
    }
    const double exponent = dim + 2.0 * s;
    Kernel k;
    k.evaluate = [exponent](const Point& x) { return std::pow(norm(x), -exponent); };
    k.s = s;
    k.label = "fractional(s=" + std::to_string(s) + ")";
    return k;
}

namespace {

Point random_displacement(int dim, double radius, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> mag(1e-3, 2.0 * radius);
    Point dir{unit(rng), dim == 2 ? unit(rng) : 0.0};
    double n = norm(dir);
    if (n == 0.0) dir = {1.0, 0.0}, n = 1.0;
    const double m = mag(rng);
    return {dir[0] / n * m, dir[1] / n * m};
}

}  // namespace

double kernel_symmetry_defect(const Kernel& kernel, int dim, double radius,
                              std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const Point x = random_displacement(dim, radius, rng);
        const double a = kernel.evaluate(x);
        const double b = kernel.evaluate({-x[0], -x[1]});
        worst = std::max(worst, std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
    }
    return worst;
}

double kernel_lower_bound_gamma(const Kernel& kernel, int dim, double radius,
                                std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double exponent = dim + 2.0 * kernel.s;
    double gamma = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
        const Point x = random_displacement(dim, radius, rng);
        gamma = std::min(gamma, kernel.evaluate(x) * std::pow(norm(x), exponent));
    }
    return gamma;
}

BilinearForm::BilinearForm(std::shared_ptr<const Grid> grid, bool exterior,
                           std::string kernel_label, Eigen::MatrixXd matrix)
    : grid_(std::move(grid)),
      exterior_(exterior),
      kernel_label_(std::move(kernel_label)),
      matrix_(std::move(matrix)) {
    if (exterior_) {
        auto llt = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(matrix_);
        if (llt->info() != Eigen::Success) {
            throw std::runtime_error("BilinearForm: Cholesky factorization failed");
        }
        llt_ = std::move(llt);
    }
}

BilinearForm BilinearForm::assemble(std::shared_ptr<const Grid> grid, const Kernel& kernel,
                                    bool exterior) {
    if (grid->size() == 0) {
        throw std::invalid_argument("assemble: empty grid");
    }
    const auto n = static_cast<Eigen::Index>(grid->size());
    const double h = grid->spacing();
    const double h2n = grid->cell_volume() * grid->cell_volume();

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Point& xi = grid->node(static_cast<std::size_t>(i));
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const Point& xj = grid->node(static_cast<std::size_t>(j));
            const Point d{xi[0] - xj[0], xi[1] - xj[1]};
            if (norm(d) == 0.0) {
                throw std::invalid_argument("assemble: coincident nodes hit the kernel singularity");
            }
            // ordered pairs (i,j) and (j,i) contribute equally
            const double w = 2.0 * h2n * kernel.evaluate(d);
            m(i, i) += w;
            m(j, j) += w;
            m(i, j) -= w;
            m(j, i) -= w;
        }
    }

    if (exterior) {
        // lattice shell R <= |y| < 2R carrying the exterior zero values
        const double radius = grid->radius();
        const auto imax = static_cast<long>(std::ceil(2.0 * radius / h));
        std::vector<Point> shell;
        const double lo2 = radius * radius;
        const double hi2 = 4.0 * radius * radius;
        if (grid->dim() == 1) {
            for (long i = -imax; i <= imax; ++i) {
                const double x = static_cast<double>(i) * h;
                if (x * x >= lo2 && x * x < hi2) shell.push_back({x, 0.0});
            }
        } else {
            for (long i = -imax; i <= imax; ++i) {
                const double x = static_cast<double>(i) * h;
                for (long j = -imax; j <= imax; ++j) {
                    const double y = static_cast<double>(j) * h;
                    const double r2 = x * x + y * y;
                    if (r2 >= lo2 && r2 < hi2) shell.push_back({x, y});
                }
            }
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            const Point& xi = grid->node(static_cast<std::size_t>(i));
            double acc = 0.0;
            for (const Point& y : shell) {
                acc += kernel.evaluate({xi[0] - y[0], xi[1] - y[1]});
            }
            m(i, i) += 2.0 * h2n * acc;
        }
    }

    return BilinearForm(std::move(grid), exterior, kernel.label, std::move(m));
}

double BilinearForm::operator()(const GridFunction& u, const GridFunction& v) const {
    if (u.grid.get() != grid_.get() || v.grid.get() != grid_.get()) {
        throw std::invalid_argument("BilinearForm: grid mismatch");
    }
    const auto n = static_cast<Eigen::Index>(grid_->size());
    const Eigen::Map<const Eigen::VectorXd> uv(u.values.data(), n);
    const Eigen::Map<const Eigen::VectorXd> vv(v.values.data(), n);
    return uv.dot(matrix_ * vv);
}

Eigen::VectorXd BilinearForm::solve(const Eigen::VectorXd& b) const {
    if (!llt_) {
        throw std::runtime_error(
            "BilinearForm::solve: requires the exterior (positive definite) form");
    }
    return llt_->solve(b);
}

double seminorm(const BilinearForm& form, const GridFunction& u) {
    return std::sqrt(std::max(0.0, form(u, u)));
}

GridFunction apply_operator(const BilinearForm& form, const GridFunction& u) {
    const auto& grid = form.grid();
    if (u.grid.get() != grid.get()) {
        throw std::invalid_argument("apply_operator: grid mismatch");
    }
    const auto n = static_cast<Eigen::Index>(grid->size());
    const Eigen::Map<const Eigen::VectorXd> uv(u.values.data(), n);
    Eigen::VectorXd w = form.matrix() * uv / grid->cell_volume();
    GridFunction out(grid);
    for (Eigen::Index i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = w(i);
    return out;
}

double embedding_ratio(const BilinearForm& form, std::size_t samples, double crit,
                       std::uint64_t seed) {
    if (samples < 1) {
        throw std::invalid_argument("embedding_ratio: samples must be >= 1");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = 0.0;
    std::size_t admissible = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        GridFunction u(form.grid());
        for (double& v : u.values) v = gauss(rng);
        const double t = seminorm(form, u);
        if (!(t > 0.0)) continue;
        ++admissible;
        best = std::max(best, lp_norm(u, crit) / t);
    }
    if (admissible == 0) {
        throw std::runtime_error("embedding_ratio: no admissible samples");
    }
    return best;
}

}  // namespace fraclap
