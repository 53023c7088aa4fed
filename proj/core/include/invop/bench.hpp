#pragma once

// Reproduction harness: error tables, operation-count scaling, and their
// CSV / SVG renderings.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invop/apply_plan.hpp"
#include "invop/grid.hpp"
#include "invop/matrix.hpp"

namespace invop {

/// Supplies the inverse of build_uniform(grid); lets callers plug a cache.
using InverseSource = std::function<DenseMatrix(const Grid2D&)>;

/// build_uniform followed by invert.
DenseMatrix compute_inverse(const Grid2D& grid);

/// max|u_num - u_exact| / max|u_exact| over all grid points.
/// Throws std::domain_error when the exact solution vanishes on the grid.
double relative_error(std::span<const double> numerical, const Grid2D& grid);

/// One right-hand side through an already inverted operator: the plan route
/// when digits is set, the conventional dense product otherwise.
ApplyResult solve_with_inverse(const DenseMatrix& inverse, std::span<const double> rhs,
                               std::optional<int> digits);

struct ErrorRow {
    std::size_t n = 0;
    std::optional<int> digits;  // nullopt: no rounding
    double error = 0.0;
};

/// Digits used for the error table by default; nullopt is the unrounded row.
std::vector<std::optional<int>> default_table1_digits();

/// Rows ordered by grid side, then by position in `digit_list`.
std::vector<ErrorRow> run_table1(std::span<const std::size_t> grid_sides,
                                 std::span<const std::optional<int>> digit_list,
                                 const InverseSource& inverse_source = compute_inverse);

struct ScalingRow {
    std::size_t n = 0;
    std::uint64_t total = 0;  // N = n^2
    int digits = 0;
    OpCounters measured;
    OpCounters naive;
    double alpha_mult = 0.0;
    double alpha_add = 0.0;
    CostPrediction predicted;
};

struct SlopeFit {
    int digits = 0;
    double mult = 0.0;
    double add = 0.0;
    double naive_mult = 0.0;
};

struct ScalingReport {
    std::vector<ScalingRow> rows;  // sorted by (n, digits)
    std::vector<SlopeFit> fits;    // one per digit count, needs >= 2 sides
};

ScalingReport run_scaling(std::span<const std::size_t> grid_sides,
                          std::span<const int> digit_list,
                          const InverseSource& inverse_source = compute_inverse);

struct IterativeScalingRow {
    std::size_t n = 0;
    std::uint64_t total = 0;
    std::uint64_t sweeps = 0;
    std::uint64_t operations = 0;
    bool converged = false;
};

/// Gauss-Seidel on the built-in test problem for each side.
std::vector<IterativeScalingRow> run_iterative_scaling(std::span<const std::size_t> grid_sides,
                                                       double tol, std::uint64_t max_iter);

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

std::string table1_csv(std::span<const ErrorRow> rows);
std::string scaling_csv(const ScalingReport& report);
std::string table1_svg(std::span<const ErrorRow> rows);
std::string scaling_svg(const ScalingReport& report);

/// Write-then-rename; throws std::runtime_error naming the path on failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

void emit_csv(std::span<const ErrorRow> rows, const std::filesystem::path& path);
void emit_csv(const ScalingReport& report, const std::filesystem::path& path);
void emit_svg(std::span<const ErrorRow> rows, const std::filesystem::path& path);
void emit_svg(const ScalingReport& report, const std::filesystem::path& path);

}  // namespace invop
