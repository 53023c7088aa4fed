#include "invop/iterative.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace invop {

double optimal_omega(const Grid2D& grid) {
    const double rho = 0.5 * (std::cos(std::numbers::pi * grid.hx() / grid.length()) +
                              std::cos(std::numbers::pi * grid.hy() / grid.length()));
    return 2.0 / (1.0 + std::sqrt(1.0 - rho * rho));
}

IterativeReport sor_solve(const Grid2D& grid, std::span<const double> rhs, double omega,
                          double tol, std::uint64_t max_iter) {
    const std::size_t n = grid.size();
    if (rhs.size() != n) {
        throw DimensionError("sor_solve: rhs has " + std::to_string(rhs.size()) +
                             " entries, grid has " + std::to_string(n) + " points");
    }
    if (omega <= 0.0) omega = optimal_omega(grid);
    if (!(omega < 2.0)) throw std::invalid_argument("omega must lie in (0, 2)");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    IterativeReport report;
    auto& u = report.solution;
    u.assign(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        if (grid.is_boundary(p)) u[p] = rhs[p];
    }

    const std::size_t nx = grid.nx();
    const bool plain = omega == 1.0;
    while (report.iterations < max_iter) {
        double correction = 0.0;
        double largest = 0.0;
        for (std::size_t row = 1; row + 1 < grid.ny(); ++row) {
            for (std::size_t col = 1; col + 1 < nx; ++col) {
                const std::size_t p = row * nx + col;
                const double seidel = rhs[p] + 0.25 * (u[p - nx] + u[p - 1] + u[p + 1] + u[p + nx]);
                const double updated = plain ? seidel : u[p] + omega * (seidel - u[p]);
                correction = std::max(correction, std::abs(updated - u[p]));
                u[p] = updated;
            }
        }
        for (const double v : u) largest = std::max(largest, std::abs(v));
        ++report.iterations;
        report.final_correction = correction;
        if (correction <= tol * std::max(1.0, largest)) {
            report.converged = true;
            break;
        }
    }
    report.operations = sweep_operations(grid) * report.iterations;
    return report;
}

IterativeReport gauss_seidel_solve(const Grid2D& grid, std::span<const double> rhs, double tol,
                                   std::uint64_t max_iter) {
    return sor_solve(grid, rhs, 1.0, tol, max_iter);
}

double predict_iterations(std::uint64_t n_total, int digits) {
    if (digits < 0) throw std::invalid_argument("digits must be non-negative");
    return 2.0 * std::numbers::ln10 / std::numbers::pi * digits * static_cast<double>(n_total);
}

double predict_iterative_total(std::uint64_t n_total, int digits) {
    if (digits < 0) throw std::invalid_argument("digits must be non-negative");
    const double n = static_cast<double>(n_total);
    return 10.0 * std::numbers::ln10 / std::numbers::pi * digits * n * n;
}

}  // namespace invop
