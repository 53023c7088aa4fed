#include "invop/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace invop {

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double length)
    : nx_(nx), ny_(ny), length_(length), hx_(0.0), hy_(0.0) {
    if (nx < 2 || ny < 2) {
        throw std::invalid_argument("grid needs at least 2 points per axis, got " +
                                    std::to_string(nx) + "x" + std::to_string(ny));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("grid length must be positive and finite");
    }
    hx_ = length / static_cast<double>(nx - 1);
    hy_ = length / static_cast<double>(ny - 1);
}

CoefficientField::CoefficientField(std::vector<double> beta) : beta_(std::move(beta)) {
    for (std::size_t p = 0; p < beta_.size(); ++p) {
        if (!std::isfinite(beta_[p])) {
            throw std::invalid_argument("coefficient at point " + std::to_string(p) +
                                        " is not finite");
        }
    }
}

CoefficientField CoefficientField::constant(const Grid2D& grid, double value) {
    return CoefficientField(std::vector<double>(grid.size(), value));
}

SourceField SourceField::sample(const Grid2D& grid, const PointFunction& f,
                                const PointFunction& g) {
    SourceField out;
    out.source.assign(grid.size(), 0.0);
    out.boundary.assign(grid.size(), 0.0);
    for (std::size_t row = 0; row < grid.ny(); ++row) {
        for (std::size_t col = 0; col < grid.nx(); ++col) {
            const std::size_t p = grid.index(row, col);
            if (grid.is_boundary(row, col)) {
                out.boundary[p] = g(grid.x(col), grid.y(row));
            } else {
                out.source[p] = f(grid.x(col), grid.y(row));
            }
        }
    }
    return out;
}

namespace {

// Shared assembly; `weight(q)` is the multiplier on neighbour q.
template <typename Weight>
OperatorMatrix assemble(const Grid2D& grid, Weight weight) {
    const std::size_t n = grid.size();
    check_dense_capacity(n);
    OperatorMatrix op{DenseMatrix(n), std::vector<RowKind>(n, RowKind::boundary)};
    for (std::size_t row = 0; row < grid.ny(); ++row) {
        for (std::size_t col = 0; col < grid.nx(); ++col) {
            const std::size_t p = grid.index(row, col);
            op.matrix(p, p) = 1.0;
            if (grid.is_boundary(row, col)) continue;
            op.row_kind[p] = RowKind::interior;
            for (const std::size_t q : {p - grid.nx(), p - 1, p + 1, p + grid.nx()}) {
                op.matrix(p, q) = -0.25 * weight(q);
            }
        }
    }
    return op;
}

}  // namespace

OperatorMatrix build_uniform(const Grid2D& grid) {
    return assemble(grid, [](std::size_t) { return 1.0; });
}

OperatorMatrix build_variable(const Grid2D& grid, const CoefficientField& coeffs) {
    if (coeffs.size() != grid.size()) {
        throw DimensionError("coefficient field has " + std::to_string(coeffs.size()) +
                             " values, grid has " + std::to_string(grid.size()) + " points");
    }
    return assemble(grid, [&](std::size_t q) { return coeffs[q]; });
}

std::vector<double> assemble_rhs(const Grid2D& grid, const SourceField& source) {
    const std::size_t n = grid.size();
    if (source.source.size() != n || source.boundary.size() != n) {
        throw DimensionError("source field does not match grid of " + std::to_string(n) +
                             " points");
    }
    // Equal-weight stencil; for hx != hy the cell area hx*hy stands in for h^2.
    const double scale = grid.hx() * grid.hy() / 4.0;
    std::vector<double> rhs(n);
    for (std::size_t p = 0; p < n; ++p) {
        rhs[p] = grid.is_boundary(p) ? source.boundary[p] : -source.source[p] * scale;
    }
    return rhs;
}

double analytic_solution(double x, double y) noexcept {
    return (x * x * x * x - x * x * x) * (y * y * y - y * y);
}

double test_source(double x, double y) noexcept {
    return (12.0 * x * x - 6.0 * x) * (y * y * y - y * y) +
           (x * x * x * x - x * x * x) * (6.0 * y - 2.0);
}

SourceField test_problem(const Grid2D& grid) {
    return SourceField::sample(grid, test_source, [](double, double) { return 0.0; });
}

std::vector<double> analytic_samples(const Grid2D& grid) {
    std::vector<double> u(grid.size());
    for (std::size_t p = 0; p < u.size(); ++p) {
        u[p] = analytic_solution(grid.x(grid.col_of(p)), grid.y(grid.row_of(p)));
    }
    return u;
}

}  // namespace invop
