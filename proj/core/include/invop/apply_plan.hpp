#pragma once

// Fast application of a quantized matrix by sharing products.
//
// Within one column j every nonzero entry is ±|v|·10^-m for some mantissa
// magnitude |v|. The plan computes t = (|v|·10^-m)·x_j once per distinct
// magnitude and then adds ±t into each row that carries it. One apply
// therefore costs
//
//     multiplications = Σ_j (distinct nonzero |mantissas| in column j)
//     additions       = number of nonzero entries
//
// where a subtraction counts as an addition and the first write into a
// zero accumulator is still counted. Columns are visited in ascending
// order, so each output row receives its contributions in the same order
// as apply_naive_quantized and the two results are bitwise equal.

#include <cstdint>
#include <span>
#include <vector>

#include "invop/matrix.hpp"
#include "invop/quant.hpp"

namespace invop {

class ApplyPlan {
public:
    struct Member {
        std::uint32_t row;
        bool negative;

        friend bool operator==(const Member&, const Member&) = default;
    };

    struct Group {
        std::uint64_t magnitude;  // |mantissa| > 0
        double coefficient;       // magnitude * 10^-m
        std::uint64_t first_member;
        std::uint64_t member_count;

        friend bool operator==(const Group&, const Group&) = default;
    };

    ApplyPlan() = default;

    std::size_t size() const noexcept { return n_; }
    int digits() const noexcept { return digits_; }

    /// Groups of column j, ascending by magnitude.
    std::span<const Group> groups(std::size_t col) const noexcept {
        return std::span(groups_).subspan(column_offsets_[col],
                                          column_offsets_[col + 1] - column_offsets_[col]);
    }
    /// Rows of a group, ascending.
    std::span<const Member> members(const Group& g) const noexcept {
        return std::span(members_).subspan(g.first_member, g.member_count);
    }

    /// Counts an apply() will report.
    OpCounters planned_counters() const noexcept {
        return {groups_.size(), members_.size()};
    }

    friend bool operator==(const ApplyPlan&, const ApplyPlan&) = default;

private:
    friend ApplyPlan build_plan(const QuantizedMatrix& q);

    std::size_t n_ = 0;
    int digits_ = 0;
    std::vector<std::size_t> column_offsets_{0};
    std::vector<Group> groups_;
    std::vector<Member> members_;
};

ApplyPlan build_plan(const QuantizedMatrix& q);

/// Throws DimensionError when x does not match the plan.
ApplyResult apply(const ApplyPlan& plan, std::span<const double> x);

/// Reference product: columns ascending, rows ascending, one multiply and
/// one add per nonzero mantissa, zeros skipped.
ApplyResult apply_naive_quantized(const QuantizedMatrix& q, std::span<const double> x);

/// Reference operation-count models for the direct and iterative routes.
struct CostPrediction {
    double direct_products = 0.0;
    double direct_sums = 0.0;
    double iterative_total = 0.0;
    double iterations = 0.0;
};

/// products = 2.5 m^2.5 N, sums = 14.2 m^2.5 N. Requires m >= 1, N >= 1.
CostPrediction predict_direct_costs(int digits, std::uint64_t n_total);

/// predict_direct_costs plus the iterative iteration and total-operation
/// estimates for the same (m, N).
CostPrediction predict_costs(int digits, std::uint64_t n_total);

}  // namespace invop
