#include "fraclap/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace fraclap {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out << std::setprecision(17);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

}  // namespace

void write_solution_csv(const std::filesystem::path& path, const GridFunction& u) {
    std::ofstream out = open_out(path);
    const int dim = u.grid->dim();
    out << (dim == 1 ? "node_index,x1,value\n" : "node_index,x1,x2,value\n");
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Point& x = u.grid->node(i);
        out << i << ',' << x[0];
        if (dim == 2) out << ',' << x[1];
        out << ',' << u.values[i] << '\n';
    }
}

GridFunction read_solution_csv(const std::filesystem::path& path,
                               const std::shared_ptr<const Grid>& grid) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open solution file '" + path.string() + "'");
    }
    const int dim = grid->dim();
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("solution file is empty");
    }
    const std::string expected = dim == 1 ? "node_index,x1,value" : "node_index,x1,x2,value";
    if (line != expected) {
        throw std::invalid_argument("solution file header must be '" + expected + "'");
    }
    GridFunction u(grid);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != static_cast<std::size_t>(dim) + 2) {
            throw std::invalid_argument("solution file: malformed row " + std::to_string(rows));
        }
        const auto idx = static_cast<std::size_t>(std::stoul(cells[0]));
        if (idx >= grid->size()) {
            throw std::invalid_argument("solution file: node index out of range");
        }
        const Point& x = grid->node(idx);
        const double x1 = std::stod(cells[1]);
        const double x2 = dim == 2 ? std::stod(cells[2]) : 0.0;
        if (std::abs(x1 - x[0]) > 1e-9 || std::abs(x2 - x[1]) > 1e-9) {
            throw std::invalid_argument("solution file does not match the configured grid");
        }
        u.values[idx] = std::stod(cells.back());
        ++rows;
    }
    if (rows != grid->size()) {
        throw std::invalid_argument("solution file has " + std::to_string(rows) + " rows, grid has " +
                                    std::to_string(grid->size()) + " nodes");
    }
    return u;
}

void write_plot_csv(const std::filesystem::path& path, const GridFunction& u) {
    std::ofstream out = open_out(path);
    const int dim = u.grid->dim();
    out << (dim == 1 ? "x1,value\n" : "x1,x2,value\n");
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Point& x = u.grid->node(i);
        out << x[0];
        if (dim == 2) out << ',' << x[1];
        out << ',' << u.values[i] << '\n';
    }
}

void write_ladder_csv(const std::filesystem::path& path, const MoserLadder& ladder) {
    std::ofstream out = open_out(path);
    out << "n,k_n,exponent,norm,ratio,fitted_c\n";
    for (std::size_t n = 0; n < ladder.norms.size(); ++n) {
        out << (n + 1) << ',' << ladder.k_seq[n] << ',' << ladder.exponents[n] << ','
            << ladder.norms[n] << ',' << ladder.ratios[n] << ',' << ladder.fitted_c << '\n';
    }
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
    std::ofstream out = open_out(path);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << m(i, j) << (j + 1 < m.cols() ? ',' : '\n');
        }
    }
}

}  // namespace fraclap
