#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fraclap {

/// Coordinate of a grid node. The second component is 0 in one dimension,
/// so displacement norms can always be taken over both entries.
using Point = std::array<double, 2>;

/// Euclidean norm of a displacement.
double norm(const Point& x);

/// Sobolev critical exponent 2N/(N - 2s). Requires 0 < s < 1 and 2s < dim.
double critical_exponent(int dim, double s);

/// Order and growth parameters (N, s, q) together with the derived
/// critical exponent. Validates 0 < s < 1, 2s < N and 2 < q < crit on
/// construction.
struct FracParams {
    int dim;
    double s;
    double q;
    double crit;  // 2N/(N - 2s)

    FracParams(int dim, double s, double q);
};

/// Uniform lattice of nodes strictly inside the ball B_R centered at the
/// origin. Functions sampled on the grid are understood to vanish outside
/// B_R (exterior Dirichlet condition). Node order is lexicographic by
/// coordinate and deterministic. Immutable after construction.
class Grid {
public:
    int dim() const { return dim_; }
    double radius() const { return radius_; }
    double spacing() const { return spacing_; }

    /// Quadrature weight h^N carried by every node.
    double cell_volume() const { return cell_volume_; }

    std::size_t size() const { return nodes_.size(); }
    const Point& node(std::size_t i) const { return nodes_[i]; }
    std::span<const Point> nodes() const { return nodes_; }

private:
    friend std::shared_ptr<const Grid> build_grid(int, double, double);
    Grid(int dim, double radius, double spacing, std::vector<Point> nodes);

    int dim_;
    double radius_;
    double spacing_;
    double cell_volume_;
    std::vector<Point> nodes_;
};

/// Enumerates the lattice {k*h : k integer} (resp. its 2-d product)
/// restricted to |x| < radius. dim must be 1 or 2, radius > 0 and
/// 0 < spacing < 2*radius. The origin always qualifies, so the grid is
/// nonempty.
std::shared_ptr<const Grid> build_grid(int dim, double radius, double spacing);

/// Node samples of a function on a grid, zero outside the truncation ball.
struct GridFunction {
    std::shared_ptr<const Grid> grid;
    std::vector<double> values;

    GridFunction() = default;  // empty placeholder for result carriers
    explicit GridFunction(std::shared_ptr<const Grid> g);
    GridFunction(std::shared_ptr<const Grid> g, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
};

/// Discrete Lebesgue norm (sum_i |u_i|^p h^N)^(1/p); max_i |u_i| for
/// p = infinity. Stable for large p: the largest sample is factored out,
/// so exponents of order 10^3..10^4 neither overflow nor underflow.
double lp_norm(const GridFunction& u, double p);

/// max_i |u_i|
double linf_norm(const GridFunction& u);

/// Discrete L^2 pairing h^N * sum_i a_i b_i.
double dot_l2h(const GridFunction& a, const GridFunction& b);

GridFunction operator*(double c, const GridFunction& u);
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);

}  // namespace fraclap
