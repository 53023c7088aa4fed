#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "invop/grid.hpp"

namespace invop {

struct IterativeReport {
    std::vector<double> solution;
    std::uint64_t iterations = 0;
    /// 5 * N per sweep, N counting every grid point.
    std::uint64_t operations = 0;
    bool converged = false;
    /// Max-norm of the last sweep's update.
    double final_correction = 0.0;
};

/// Work per sweep assumed by the operation accounting.
inline std::uint64_t sweep_operations(const Grid2D& grid) noexcept {
    return 5 * static_cast<std::uint64_t>(grid.size());
}

/// 2 / (1 + sqrt(1 - rho^2)) with rho the Jacobi spectral radius of the
/// five-point stencil; equals 2 / (1 + sin(pi h)) on square grids.
double optimal_omega(const Grid2D& grid);

/// Lexicographic SOR sweeps over interior points of the five-point system
/// with boundary values pinned to rhs. Stops once the largest update in a
/// sweep is <= tol * max(1, max|u|). omega <= 0 selects optimal_omega.
/// Running out of iterations is reported through `converged`, not thrown.
IterativeReport sor_solve(const Grid2D& grid, std::span<const double> rhs, double omega,
                          double tol, std::uint64_t max_iter);

IterativeReport gauss_seidel_solve(const Grid2D& grid, std::span<const double> rhs, double tol,
                                   std::uint64_t max_iter);

/// Iteration estimate (2 ln 10 / pi) m N.
double predict_iterations(std::uint64_t n_total, int digits);

/// Total-operation estimate (10 ln 10 / pi) m N^2.
double predict_iterative_total(std::uint64_t n_total, int digits);

}  // namespace invop
