#include "invop/apply_plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "invop/iterative.hpp"

namespace invop {

namespace {

std::uint64_t magnitude_of(std::int64_t m) noexcept {
    return m < 0 ? 0 - static_cast<std::uint64_t>(m) : static_cast<std::uint64_t>(m);
}

void check_length(std::size_t n, std::size_t got, const char* who) {
    if (n != got) {
        throw DimensionError(std::string(who) + ": matrix is " + std::to_string(n) +
                             " wide, vector has " + std::to_string(got) + " entries");
    }
}

}  // namespace

ApplyPlan build_plan(const QuantizedMatrix& q) {
    const std::size_t n = q.size();
    if (n > std::numeric_limits<std::uint32_t>::max()) {
        throw CapacityError("plan rows must fit 32 bits");
    }
    ApplyPlan plan;
    plan.n_ = n;
    plan.digits_ = q.digits();
    plan.column_offsets_.reserve(n + 1);

    struct Entry {
        std::uint64_t magnitude;
        std::uint32_t row;
        bool negative;
    };
    std::vector<Entry> column;
    for (std::size_t c = 0; c < n; ++c) {
        column.clear();
        for (std::size_t r = 0; r < n; ++r) {
            const std::int64_t m = q(r, c);
            if (m != 0) column.push_back({magnitude_of(m), static_cast<std::uint32_t>(r), m < 0});
        }
        // Rows are already ascending; a stable sort keeps them so per group.
        std::stable_sort(column.begin(), column.end(),
                         [](const Entry& a, const Entry& b) { return a.magnitude < b.magnitude; });
        for (std::size_t k = 0; k < column.size(); ++k) {
            if (k == 0 || column[k].magnitude != column[k - 1].magnitude) {
                const auto magnitude = column[k].magnitude;
                plan.groups_.push_back({magnitude,
                                        dequantized_value(static_cast<std::int64_t>(magnitude),
                                                          q.scale()),
                                        plan.members_.size(), 0});
            }
            plan.members_.push_back({column[k].row, column[k].negative});
            ++plan.groups_.back().member_count;
        }
        plan.column_offsets_.push_back(plan.groups_.size());
    }
    return plan;
}

ApplyResult apply(const ApplyPlan& plan, std::span<const double> x) {
    const std::size_t n = plan.size();
    check_length(n, x.size(), "apply");
    ApplyResult out{std::vector<double>(n, 0.0), {}};
    auto& y = out.values;
    for (std::size_t c = 0; c < n; ++c) {
        const double xc = x[c];
        for (const auto& group : plan.groups(c)) {
            const double t = group.coefficient * xc;
            for (const auto& member : plan.members(group)) {
                y[member.row] += member.negative ? -t : t;
            }
        }
    }
    out.counters = plan.planned_counters();
    return out;
}

ApplyResult apply_naive_quantized(const QuantizedMatrix& q, std::span<const double> x) {
    const std::size_t n = q.size();
    check_length(n, x.size(), "apply_naive_quantized");
    ApplyResult out{std::vector<double>(n, 0.0), {}};
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            if (q(r, c) == 0) continue;
            out.values[r] += q.value(r, c) * x[c];
            ++out.counters.multiplications;
            ++out.counters.additions;
        }
    }
    return out;
}

CostPrediction predict_direct_costs(int digits, std::uint64_t n_total) {
    if (digits < 1 || n_total < 1) {
        throw std::invalid_argument("predict_direct_costs needs digits >= 1 and N >= 1");
    }
    const double growth = std::pow(static_cast<double>(digits), 2.5) * static_cast<double>(n_total);
    CostPrediction p;
    p.direct_products = 2.5 * growth;
    p.direct_sums = 14.2 * growth;
    return p;
}

CostPrediction predict_costs(int digits, std::uint64_t n_total) {
    CostPrediction p = predict_direct_costs(digits, n_total);
    p.iterations = predict_iterations(n_total, digits);
    p.iterative_total = predict_iterative_total(n_total, digits);
    return p;
}

}  // namespace invop
