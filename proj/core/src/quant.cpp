#include "invop/quant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace invop {

namespace {

constexpr std::array<double, kMaxDigits + 1> kPowersOfTen = {
    1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12};

void check_digits(int digits) {
    if (digits < 0 || digits > kMaxDigits) {
        throw std::invalid_argument("digits must be in [0, " + std::to_string(kMaxDigits) +
                                    "], got " + std::to_string(digits));
    }
}

// 2^63; anything at or beyond this does not fit an int64 mantissa.
constexpr double kMantissaLimit = 9223372036854775808.0;

}  // namespace

double decimal_scale(int digits) {
    check_digits(digits);
    return kPowersOfTen[static_cast<std::size_t>(digits)];
}

QuantizedMatrix::QuantizedMatrix(std::size_t n, int digits, std::vector<std::int64_t> mantissas)
    : n_(n), digits_(digits), scale_(decimal_scale(digits)), mantissas_(std::move(mantissas)) {
    check_dense_capacity(n);
    if (mantissas_.size() != n * n) {
        throw DimensionError("expected " + std::to_string(n * n) + " mantissas, got " +
                             std::to_string(mantissas_.size()));
    }
}

QuantizedMatrix quantize(const DenseMatrix& mat, int digits) {
    const double scale = decimal_scale(digits);
    const std::size_t n = mat.size();
    std::vector<std::int64_t> mantissas(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double v = mat(r, c);
            const double rounded = std::floor(std::abs(v) * scale + 0.5);
            if (!std::isfinite(v) || rounded >= kMantissaLimit) {
                throw QuantizationError("entry (" + std::to_string(r) + ", " +
                                        std::to_string(c) + ") = " + std::to_string(v) +
                                        " does not fit a mantissa at " +
                                        std::to_string(digits) + " digits");
            }
            const auto m = static_cast<std::int64_t>(rounded);
            mantissas[r * n + c] = std::signbit(v) ? -m : m;
        }
    }
    return QuantizedMatrix(n, digits, std::move(mantissas));
}

DenseMatrix dequantize(const QuantizedMatrix& q) {
    const std::size_t n = q.size();
    std::vector<double> entries(n * n);
    const auto mantissas = q.mantissas();
    for (std::size_t k = 0; k < entries.size(); ++k) {
        entries[k] = dequantized_value(mantissas[k], q.scale());
    }
    return DenseMatrix(n, std::move(entries));
}

SparsityStats sparsity_stats(const QuantizedMatrix& q) {
    const std::size_t n = q.size();
    SparsityStats stats;
    stats.distinct_per_column.assign(n, 0);
    std::vector<std::uint64_t> magnitudes;
    for (std::size_t c = 0; c < n; ++c) {
        magnitudes.clear();
        for (std::size_t r = 0; r < n; ++r) {
            const std::int64_t m = q(r, c);
            if (m == 0) continue;
            magnitudes.push_back(m < 0 ? 0 - static_cast<std::uint64_t>(m)
                                       : static_cast<std::uint64_t>(m));
        }
        stats.nonzero_count += magnitudes.size();
        std::sort(magnitudes.begin(), magnitudes.end());
        stats.distinct_per_column[c] = static_cast<std::uint64_t>(
            std::unique(magnitudes.begin(), magnitudes.end()) - magnitudes.begin());
    }
    return stats;
}

}  // namespace invop
