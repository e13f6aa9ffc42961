#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "fraclap/grid.hpp"

namespace fraclap {

/// Symmetric positive interaction kernel K(x) for nonzero displacements x.
/// The default choice |x|^-(N+2s) reproduces the fractional Laplacian.
struct Kernel {
    std::function<double(const Point&)> evaluate;
    double s = 0.5;
    std::string label;

    static Kernel fractional(int dim, double s);
};

/// Sampled symmetry check: K(x) = K(-x) at `samples` random displacements
/// with |x| in (0, 2*radius]. Returns the worst relative defect.
double kernel_symmetry_defect(const Kernel& kernel, int dim, double radius,
                              std::size_t samples, std::uint64_t seed);

/// Sampled lower-bound constant: min over random displacements of
/// K(x) * |x|^(N+2s). A positive result certifies K(x) >= Gamma |x|^-(N+2s)
/// at every sampled point, with Gamma the returned value.
double kernel_lower_bound_gamma(const Kernel& kernel, int dim, double radius,
                                std::size_t samples, std::uint64_t seed);

/// Discrete Gagliardo bilinear form
///
///   E(u,v) = sum_{i != j} (u_i - u_j)(v_i - v_j) K(x_i - x_j) h^{2N},
///
/// summation over ordered pairs, diagonal excluded. With the exterior flag
/// set, each node additionally interacts with a lattice shell
/// R <= |y| < 2R where the function vanishes, which adds
/// 2 h^{2N} sum_shell K(x_i - y) to the i-th diagonal entry and makes the
/// form positive definite (E(u,u) = 0 only for u = 0). Without the flag
/// E(u,u) = 0 exactly for grid-constant u.
///
/// The assembled matrix M satisfies E(u,v) = u^T M v and is symmetric by
/// construction. Assembly is sequential in a fixed index order, so results
/// are reproducible bit for bit.
class BilinearForm {
public:
    static BilinearForm assemble(std::shared_ptr<const Grid> grid, const Kernel& kernel,
                                 bool exterior);

    /// E(u,v)
    double operator()(const GridFunction& u, const GridFunction& v) const;

    const std::shared_ptr<const Grid>& grid() const { return grid_; }
    bool exterior() const { return exterior_; }
    const std::string& kernel_label() const { return kernel_label_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

    /// Solves M x = b through the Cholesky factor computed at assembly.
    /// Only available for exterior (definite) forms.
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

private:
    BilinearForm(std::shared_ptr<const Grid> grid, bool exterior, std::string kernel_label,
                 Eigen::MatrixXd matrix);

    std::shared_ptr<const Grid> grid_;
    bool exterior_;
    std::string kernel_label_;
    Eigen::MatrixXd matrix_;
    std::shared_ptr<const Eigen::LLT<Eigen::MatrixXd>> llt_;  // empty unless exterior
};

/// sqrt(E(u,u))
double seminorm(const BilinearForm& form, const GridFunction& u);

/// Discrete fractional operator: returns v with v_i = (M u)_i / h^N, so the
/// duality <apply_operator(u), phi>_h = E(u, phi) holds exactly.
GridFunction apply_operator(const BilinearForm& form, const GridFunction& u);

/// Empirical embedding constant: max over `samples` random grid functions
/// of lp_norm(u, crit) / seminorm(u). Draws with vanishing seminorm are
/// skipped; throws if every draw is skipped.
double embedding_ratio(const BilinearForm& form, std::size_t samples, double crit,
                       std::uint64_t seed);

}  // namespace fraclap
