#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace invop {

/// Largest dense dimension N the toolkit will allocate (N*N doubles).
inline constexpr std::size_t kMaxDenseDimension = 16384;

/// Thrown when a requested dense allocation exceeds kMaxDenseDimension.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Thrown when operands have incompatible dimensions.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void check_dense_capacity(std::size_t n);

/// Dense square matrix of doubles, row-major.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n);
    DenseMatrix(std::size_t n, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    double operator()(std::size_t row, std::size_t col) const noexcept {
        return entries_[row * n_ + col];
    }
    double& operator()(std::size_t row, std::size_t col) noexcept {
        return entries_[row * n_ + col];
    }

    std::span<const double> row(std::size_t r) const noexcept {
        return {entries_.data() + r * n_, n_};
    }
    std::span<double> row(std::size_t r) noexcept {
        return {entries_.data() + r * n_, n_};
    }

    std::span<const double> entries() const noexcept { return entries_; }
    std::span<double> entries() noexcept { return entries_; }

    double max_abs() const noexcept;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> entries_;
};

/// Elementary operation counts of one matrix-vector product.
struct OpCounters {
    std::uint64_t multiplications = 0;
    std::uint64_t additions = 0;

    friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

struct ApplyResult {
    std::vector<double> values;
    OpCounters counters;
};

}  // namespace invop
