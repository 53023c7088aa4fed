#pragma once

#include <span>
#include <stdexcept>

#include "invop/grid.hpp"
#include "invop/matrix.hpp"

namespace invop {

/// Raised when a pivot falls below kSingularPivotRatio * max|A|.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kSingularPivotRatio = 1e-13;

/// LU factorization with partial pivoting, then one triangular solve pair
/// against the identity. Pivot ties go to the lowest row index, so the
/// result is bit-reproducible for a given input.
DenseMatrix invert(const DenseMatrix& a);
DenseMatrix invert(const OperatorMatrix& a);

/// max |(A * Ainv - I)_ij|
double residual_check(const DenseMatrix& a, const DenseMatrix& ainv);
double residual_check(const OperatorMatrix& a, const DenseMatrix& ainv);

/// Conventional product y = M x with ascending-column accumulation.
/// Counts N^2 multiplications and N(N-1) additions.
ApplyResult apply_dense(const DenseMatrix& m, std::span<const double> x);

}  // namespace invop
