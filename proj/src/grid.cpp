#include "fraclap/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fraclap {

double norm(const Point& x) { return std::hypot(x[0], x[1]); }

double critical_exponent(int dim, double s) {
    if (!(s > 0.0 && s < 1.0)) {
        throw std::invalid_argument("critical_exponent: s must lie in (0,1), got " +
                                    std::to_string(s));
    }
    if (!(2.0 * s < static_cast<double>(dim))) {
        throw std::invalid_argument("critical_exponent: requires 2s < N, got 2s = " +
                                    std::to_string(2.0 * s) + ", N = " + std::to_string(dim));
    }
    return 2.0 * dim / (dim - 2.0 * s);
}

FracParams::FracParams(int dim_, double s_, double q_)
    : dim(dim_), s(s_), q(q_), crit(critical_exponent(dim_, s_)) {
    if (!(q > 2.0 && q < crit)) {
        throw std::invalid_argument("FracParams: q must satisfy 2 < q < " +
                                    std::to_string(crit) + ", got " + std::to_string(q));
    }
}

Grid::Grid(int dim, double radius, double spacing, std::vector<Point> nodes)
    : dim_(dim),
      radius_(radius),
      spacing_(spacing),
      cell_volume_(dim == 1 ? spacing : spacing * spacing),
      nodes_(std::move(nodes)) {}

std::shared_ptr<const Grid> build_grid(int dim, double radius, double spacing) {
    if (dim != 1 && dim != 2) {
        throw std::invalid_argument("build_grid: dim must be 1 or 2, got " + std::to_string(dim));
    }
    if (!(radius > 0.0)) {
        throw std::invalid_argument("build_grid: radius must be positive");
    }
    if (!(spacing > 0.0) || !(spacing < 2.0 * radius)) {
        throw std::invalid_argument("build_grid: spacing must satisfy 0 < h < 2R");
    }

    const double r2 = radius * radius;
    const auto imax = static_cast<long>(std::ceil(radius / spacing));
    std::vector<Point> nodes;
    if (dim == 1) {
        for (long i = -imax; i <= imax; ++i) {
            const double x = static_cast<double>(i) * spacing;
            if (x * x < r2) nodes.push_back({x, 0.0});
        }
    } else {
        for (long i = -imax; i <= imax; ++i) {
            const double x = static_cast<double>(i) * spacing;
            for (long j = -imax; j <= imax; ++j) {
                const double y = static_cast<double>(j) * spacing;
                if (x * x + y * y < r2) nodes.push_back({x, y});
            }
        }
    }
    // loop order is lexicographic already; nodes are distinct lattice points
    return std::shared_ptr<const Grid>(new Grid(dim, radius, spacing, std::move(nodes)));
}

GridFunction::GridFunction(std::shared_ptr<const Grid> g)
    : grid(std::move(g)), values(grid->size(), 0.0) {}

GridFunction::GridFunction(std::shared_ptr<const Grid> g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size()) {
        throw std::invalid_argument("GridFunction: values length must equal node count");
    }
}

double linf_norm(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

double lp_norm(const GridFunction& u, double p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("lp_norm: p must satisfy p >= 1");
    }
    const double m = linf_norm(u);
    if (std::isinf(p)) return m;
    if (m == 0.0) return 0.0;
    double acc = 0.0;
    for (double v : u.values) acc += std::pow(std::abs(v) / m, p);
    return m * std::pow(acc * u.grid->cell_volume(), 1.0 / p);
}

double dot_l2h(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dot_l2h: size mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a.values[i] * b.values[i];
    return acc * a.grid->cell_volume();
}

GridFunction operator*(double c, const GridFunction& u) {
    GridFunction out = u;
    for (double& v : out.values) v *= c;
    return out;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
    return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    GridFunction out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

}  // namespace fraclap
