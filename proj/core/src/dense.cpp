#include "invop/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace invop {

void check_dense_capacity(std::size_t n) {
    if (n > kMaxDenseDimension) {
        throw CapacityError("dense dimension " + std::to_string(n) + " exceeds limit " +
                            std::to_string(kMaxDenseDimension));
    }
}

DenseMatrix::DenseMatrix(std::size_t n) : n_(n) {
    check_dense_capacity(n);
    entries_.assign(n * n, 0.0);
}

DenseMatrix::DenseMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
    check_dense_capacity(n);
    if (entries_.size() != n * n) {
        throw DimensionError("expected " + std::to_string(n * n) + " entries, got " +
                             std::to_string(entries_.size()));
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double DenseMatrix::max_abs() const noexcept {
    double best = 0.0;
    for (const double v : entries_) best = std::max(best, std::abs(v));
    return best;
}

DenseMatrix invert(const DenseMatrix& a) {
    const std::size_t n = a.size();
    DenseMatrix lu = a;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    const double threshold = kSingularPivotRatio * a.max_abs();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(lu(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            if (const double v = std::abs(lu(r, k)); v > best) {
                best = v;
                pivot = r;
            }
        }
        if (!(best > threshold)) {
            throw SingularMatrixError("matrix is singular to working precision at column " +
                                      std::to_string(k));
        }
        if (pivot != k) {
            std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(pivot).begin());
            std::swap(perm[k], perm[pivot]);
        }
        const auto pivot_row = lu.row(k);
        const double inv_pivot = 1.0 / pivot_row[k];
        for (std::size_t r = k + 1; r < n; ++r) {
            auto target = lu.row(r);
            const double factor = target[k] * inv_pivot;
            target[k] = factor;
            if (factor == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) target[c] -= factor * pivot_row[c];
        }
    }

    // Solve L U X = P I row-wise, so every update is a contiguous axpy.
    DenseMatrix x(n);
    for (std::size_t r = 0; r < n; ++r) x(r, perm[r]) = 1.0;

    for (std::size_t r = 1; r < n; ++r) {
        auto target = x.row(r);
        const auto l_row = lu.row(r);
        for (std::size_t k = 0; k < r; ++k) {
            const double factor = l_row[k];
            if (factor == 0.0) continue;
            const auto src = x.row(k);
            for (std::size_t c = 0; c < n; ++c) target[c] -= factor * src[c];
        }
    }
    for (std::size_t r = n; r-- > 0;) {
        auto target = x.row(r);
        const auto u_row = lu.row(r);
        for (std::size_t k = r + 1; k < n; ++k) {
            const double factor = u_row[k];
            if (factor == 0.0) continue;
            const auto src = x.row(k);
            for (std::size_t c = 0; c < n; ++c) target[c] -= factor * src[c];
        }
        const double inv_diag = 1.0 / u_row[r];
        for (double& v : target) v *= inv_diag;
    }
    return x;
}

DenseMatrix invert(const OperatorMatrix& a) { return invert(a.matrix); }

double residual_check(const DenseMatrix& a, const DenseMatrix& ainv) {
    const std::size_t n = a.size();
    if (ainv.size() != n) {
        throw DimensionError("residual_check: dimensions " + std::to_string(n) + " and " +
                             std::to_string(ainv.size()) + " differ");
    }
    std::vector<double> product_row(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(product_row.begin(), product_row.end(), 0.0);
        const auto a_row = a.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a_row[k];
            if (aik == 0.0) continue;
            const auto inv_row = ainv.row(k);
            for (std::size_t j = 0; j < n; ++j) product_row[j] += aik * inv_row[j];
        }
        product_row[i] -= 1.0;
        for (const double v : product_row) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

double residual_check(const OperatorMatrix& a, const DenseMatrix& ainv) {
    return residual_check(a.matrix, ainv);
}

ApplyResult apply_dense(const DenseMatrix& m, std::span<const double> x) {
    const std::size_t n = m.size();
    if (x.size() != n) {
        throw DimensionError("apply_dense: matrix is " + std::to_string(n) +
                             " wide, vector has " + std::to_string(x.size()) + " entries");
    }
    ApplyResult out{std::vector<double>(n, 0.0), {}};
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = m.row(i);
        double acc = row[0] * x[0];
        for (std::size_t j = 1; j < n; ++j) acc += row[j] * x[j];
        out.values[i] = acc;
    }
    out.counters.multiplications = static_cast<std::uint64_t>(n) * n;
    out.counters.additions = n == 0 ? 0 : static_cast<std::uint64_t>(n) * (n - 1);
    return out;
}

}  // namespace invop
