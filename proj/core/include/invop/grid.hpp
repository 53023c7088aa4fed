#pragma once

// Uniform 2-D grids, the five-point operator matrix with Dirichlet identity
// rows, right-hand-side assembly and the polynomial test problem.
//
// Points are ordered row by row: p = row * nx + col, where row runs along y
// and col (the fastest index) along x. Both indices are 0-based here.

#include <cstddef>
#include <functional>
#include <vector>

#include "invop/matrix.hpp"

namespace invop {

class Grid2D {
public:
    /// Uniform grid on [0, length]^2 with h = length / (n - 1) per axis.
    /// Throws std::invalid_argument unless nx, ny >= 2 and length > 0.
    Grid2D(std::size_t nx, std::size_t ny, double length = 1.0);

    static Grid2D square(std::size_t n, double length = 1.0) { return {n, n, length}; }

    std::size_t nx() const noexcept { return nx_; }
    std::size_t ny() const noexcept { return ny_; }
    std::size_t size() const noexcept { return nx_ * ny_; }
    double length() const noexcept { return length_; }
    double hx() const noexcept { return hx_; }
    double hy() const noexcept { return hy_; }

    std::size_t index(std::size_t row, std::size_t col) const noexcept { return row * nx_ + col; }
    std::size_t row_of(std::size_t p) const noexcept { return p / nx_; }
    std::size_t col_of(std::size_t p) const noexcept { return p % nx_; }

    double x(std::size_t col) const noexcept { return hx_ * static_cast<double>(col); }
    double y(std::size_t row) const noexcept { return hy_ * static_cast<double>(row); }

    bool is_boundary(std::size_t row, std::size_t col) const noexcept {
        return row == 0 || col == 0 || row + 1 == ny_ || col + 1 == nx_;
    }
    bool is_boundary(std::size_t p) const noexcept { return is_boundary(row_of(p), col_of(p)); }

    std::size_t interior_count() const noexcept { return (nx_ - 2) * (ny_ - 2); }
    std::size_t boundary_count() const noexcept { return size() - interior_count(); }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;

private:
    std::size_t nx_;
    std::size_t ny_;
    double length_;
    double hx_;
    double hy_;
};

enum class RowKind : unsigned char { boundary, interior };

/// System matrix of the discretized operator together with per-row tags.
struct OperatorMatrix {
    DenseMatrix matrix;
    std::vector<RowKind> row_kind;

    std::size_t size() const noexcept { return matrix.size(); }
};

/// Per-point coefficients of the variable-coefficient scheme.
class CoefficientField {
public:
    /// Throws std::invalid_argument on non-finite values.
    explicit CoefficientField(std::vector<double> beta);

    static CoefficientField constant(const Grid2D& grid, double value);

    std::size_t size() const noexcept { return beta_.size(); }
    double operator[](std::size_t p) const noexcept { return beta_[p]; }

private:
    std::vector<double> beta_;
};

/// Sampled source term and Dirichlet data. `source` is read at interior
/// points, `boundary` at boundary points; other slots are ignored.
struct SourceField {
    std::vector<double> source;
    std::vector<double> boundary;

    using PointFunction = std::function<double(double x, double y)>;
    static SourceField sample(const Grid2D& grid, const PointFunction& f, const PointFunction& g);
};

OperatorMatrix build_uniform(const Grid2D& grid);

/// Neighbour weights are -0.25 * beta evaluated at the neighbour point.
/// Throws DimensionError when the field does not match the grid.
OperatorMatrix build_variable(const Grid2D& grid, const CoefficientField& coeffs);

/// Boundary slots carry g, interior slots carry -f * h^2 / 4.
std::vector<double> assemble_rhs(const Grid2D& grid, const SourceField& source);

/// Exact solution of the built-in test problem.
double analytic_solution(double x, double y) noexcept;

/// Laplacian of analytic_solution; the source of the built-in test problem.
double test_source(double x, double y) noexcept;

/// Test problem on `grid`: test_source inside, zero Dirichlet data.
SourceField test_problem(const Grid2D& grid);

/// analytic_solution sampled at every grid point.
std::vector<double> analytic_samples(const Grid2D& grid);

}  // namespace invop
