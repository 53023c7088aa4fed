#pragma once

// Decimal fixed-point representation of a dense matrix: every entry is an
// integer mantissa scaled by 10^-digits.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "invop/matrix.hpp"

namespace invop {

inline constexpr int kMaxDigits = 12;

class QuantizationError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// 10^digits as an exact double, digits in [0, kMaxDigits].
double decimal_scale(int digits);

/// The real value a mantissa stands for: mantissa / 10^digits, correctly
/// rounded. Every consumer of quantized entries goes through this.
inline double dequantized_value(std::int64_t mantissa, double scale) noexcept {
    return static_cast<double>(mantissa) / scale;
}

class QuantizedMatrix {
public:
    QuantizedMatrix() = default;
    /// Throws std::invalid_argument for digits outside [0, kMaxDigits] and
    /// DimensionError for a mantissa count other than n*n.
    QuantizedMatrix(std::size_t n, int digits, std::vector<std::int64_t> mantissas);

    std::size_t size() const noexcept { return n_; }
    int digits() const noexcept { return digits_; }
    double scale() const noexcept { return scale_; }

    std::int64_t operator()(std::size_t row, std::size_t col) const noexcept {
        return mantissas_[row * n_ + col];
    }
    double value(std::size_t row, std::size_t col) const noexcept {
        return dequantized_value((*this)(row, col), scale_);
    }
    std::span<const std::int64_t> mantissas() const noexcept { return mantissas_; }

    friend bool operator==(const QuantizedMatrix& a, const QuantizedMatrix& b) {
        return a.n_ == b.n_ && a.digits_ == b.digits_ && a.mantissas_ == b.mantissas_;
    }

private:
    std::size_t n_ = 0;
    int digits_ = 0;
    double scale_ = 1.0;
    std::vector<std::int64_t> mantissas_;
};

/// Rounds each entry to `digits` decimals, halves away from zero.
/// Throws QuantizationError naming the entry if a mantissa would not fit
/// in 64 bits or the entry is not finite.
QuantizedMatrix quantize(const DenseMatrix& mat, int digits);

DenseMatrix dequantize(const QuantizedMatrix& q);

struct SparsityStats {
    std::uint64_t nonzero_count = 0;
    /// Distinct nonzero |mantissa| values per column.
    std::vector<std::uint64_t> distinct_per_column;
};

SparsityStats sparsity_stats(const QuantizedMatrix& q);

}  // namespace invop
