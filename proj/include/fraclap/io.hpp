#pragma once

#include <filesystem>

#include <Eigen/Dense>

#include "fraclap/grid.hpp"
#include "fraclap/moser.hpp"

namespace fraclap {

/// Solution file schema: header `node_index,x1[,x2],value`, one row per
/// node in grid order.
void write_solution_csv(const std::filesystem::path& path, const GridFunction& u);

/// Reads a solution file back onto the given grid. The node count and
/// coordinates must match the grid (1e-9 absolute); throws otherwise.
GridFunction read_solution_csv(const std::filesystem::path& path,
                               const std::shared_ptr<const Grid>& grid);

/// Plot data: `x1[,x2],value` rows without the index column.
void write_plot_csv(const std::filesystem::path& path, const GridFunction& u);

/// Ladder rows: `n,k_n,exponent,norm,ratio,fitted_c`.
void write_ladder_csv(const std::filesystem::path& path, const MoserLadder& ladder);

/// Dense matrix dump for debugging the assembled form.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

}  // namespace fraclap
