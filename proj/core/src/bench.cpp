#include "invop/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "invop/dense.hpp"
#include "invop/iterative.hpp"
#include "invop/plot.hpp"
#include "invop/quant.hpp"

namespace invop {

DenseMatrix compute_inverse(const Grid2D& grid) { return invert(build_uniform(grid)); }

double relative_error(std::span<const double> numerical, const Grid2D& grid) {
    if (numerical.size() != grid.size()) {
        throw DimensionError("relative_error: vector has " + std::to_string(numerical.size()) +
                             " entries, grid has " + std::to_string(grid.size()) + " points");
    }
    const auto exact = analytic_samples(grid);
    double worst = 0.0;
    double peak = 0.0;
    for (std::size_t p = 0; p < exact.size(); ++p) {
        worst = std::max(worst, std::abs(numerical[p] - exact[p]));
        peak = std::max(peak, std::abs(exact[p]));
    }
    if (peak == 0.0) {
        throw std::domain_error("exact solution vanishes on every point of a " +
                                std::to_string(grid.nx()) + "x" + std::to_string(grid.ny()) +
                                " grid; relative error is undefined");
    }
    return worst / peak;
}

ApplyResult solve_with_inverse(const DenseMatrix& inverse, std::span<const double> rhs,
                               std::optional<int> digits) {
    if (!digits) return apply_dense(inverse, rhs);
    return invop::apply(build_plan(quantize(inverse, *digits)), rhs);
}

std::vector<std::optional<int>> default_table1_digits() {
    return {1, 2, 3, 5, 6, std::nullopt};
}

std::vector<ErrorRow> run_table1(std::span<const std::size_t> grid_sides,
                                 std::span<const std::optional<int>> digit_list,
                                 const InverseSource& inverse_source) {
    std::vector<std::size_t> sides(grid_sides.begin(), grid_sides.end());
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());

    std::vector<ErrorRow> rows;
    for (const std::size_t n : sides) {
        const Grid2D grid = Grid2D::square(n);
        const DenseMatrix inverse = inverse_source(grid);
        const auto rhs = assemble_rhs(grid, test_problem(grid));
        for (const auto& digits : digit_list) {
            const auto solved = solve_with_inverse(inverse, rhs, digits);
            rows.push_back({n, digits, relative_error(solved.values, grid)});
        }
    }
    return rows;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("slope fit needs at least two paired points");
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
            throw std::domain_error("log-log fit needs positive data");
        }
        mean_x += std::log(x[k]);
        mean_y += std::log(y[k]);
    }
    mean_x /= static_cast<double>(x.size());
    mean_y /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = std::log(x[k]) - mean_x;
        sxy += dx * (std::log(y[k]) - mean_y);
        sxx += dx * dx;
    }
    if (sxx == 0.0) throw std::domain_error("log-log fit needs distinct x values");
    return sxy / sxx;
}

ScalingReport run_scaling(std::span<const std::size_t> grid_sides,
                          std::span<const int> digit_list,
                          const InverseSource& inverse_source) {
    if (grid_sides.empty() || digit_list.empty()) {
        throw std::invalid_argument("run_scaling needs at least one grid side and one digit count");
    }
    std::vector<std::size_t> sides(grid_sides.begin(), grid_sides.end());
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
    std::vector<int> digits(digit_list.begin(), digit_list.end());
    std::sort(digits.begin(), digits.end());
    digits.erase(std::unique(digits.begin(), digits.end()), digits.end());

    ScalingReport report;
    for (const std::size_t n : sides) {
        const Grid2D grid = Grid2D::square(n);
        const DenseMatrix inverse = inverse_source(grid);
        const auto rhs = assemble_rhs(grid, test_problem(grid));
        const OpCounters naive = apply_dense(inverse, rhs).counters;
        for (const int m : digits) {
            ScalingRow row;
            row.n = n;
            row.total = grid.size();
            row.digits = m;
            row.measured = invop::apply(build_plan(quantize(inverse, m)), rhs).counters;
            row.naive = naive;
            const auto total = static_cast<double>(row.total);
            row.alpha_mult = static_cast<double>(row.measured.multiplications) / total;
            row.alpha_add = static_cast<double>(row.measured.additions) / total;
            row.predicted = m >= 1 ? predict_costs(m, row.total) : CostPrediction{};
            report.rows.push_back(row);
        }
    }

    if (sides.size() >= 2) {
        for (const int m : digits) {
            std::vector<double> xs, mult, add, naive;
            for (const auto& row : report.rows) {
                if (row.digits != m) continue;
                xs.push_back(static_cast<double>(row.total));
                mult.push_back(static_cast<double>(row.measured.multiplications));
                add.push_back(static_cast<double>(row.measured.additions));
                naive.push_back(static_cast<double>(row.naive.multiplications));
            }
            // A plan with no work at some size (e.g. m = 0) has no log-log slope.
            const auto positive = [](const std::vector<double>& v) {
                return std::all_of(v.begin(), v.end(), [](double d) { return d > 0.0; });
            };
            SlopeFit fit{m, std::nan(""), std::nan(""), fit_loglog_slope(xs, naive)};
            if (positive(mult)) fit.mult = fit_loglog_slope(xs, mult);
            if (positive(add)) fit.add = fit_loglog_slope(xs, add);
            report.fits.push_back(fit);
        }
    }
    return report;
}

std::vector<IterativeScalingRow> run_iterative_scaling(std::span<const std::size_t> grid_sides,
                                                       double tol, std::uint64_t max_iter) {
    std::vector<IterativeScalingRow> rows;
    for (const std::size_t n : grid_sides) {
        const Grid2D grid = Grid2D::square(n);
        const auto rhs = assemble_rhs(grid, test_problem(grid));
        const auto report = gauss_seidel_solve(grid, rhs, tol, max_iter);
        rows.push_back({n, grid.size(), report.iterations, report.operations, report.converged});
    }
    return rows;
}

namespace {

std::string digits_label(const std::optional<int>& digits) {
    return digits ? std::to_string(*digits) : std::string("none");
}

}  // namespace

std::string table1_csv(std::span<const ErrorRow> rows) {
    std::string out = "n,digits,error\n";
    for (const auto& row : rows) {
        out += fmt::format("{},{},{:.6g}\n", row.n, digits_label(row.digits), row.error);
    }
    return out;
}

std::string scaling_csv(const ScalingReport& report) {
    std::string out =
        "n,N,m,n_mult,n_add,alpha_mult,alpha_add,naive_mult,naive_add,"
        "pred_prod_eq9,pred_sum_eq10,pred_iter_eq7,pred_iter_total_eq8\n";
    for (const auto& r : report.rows) {
        out += fmt::format("{},{},{},{},{},{:.10g},{:.10g},{},{},{:.10g},{:.10g},{:.10g},{:.10g}\n",
                           r.n, r.total, r.digits, r.measured.multiplications,
                           r.measured.additions, r.alpha_mult, r.alpha_add,
                           r.naive.multiplications, r.naive.additions,
                           r.predicted.direct_products, r.predicted.direct_sums,
                           r.predicted.iterations, r.predicted.iterative_total);
    }
    return out;
}

std::string table1_svg(std::span<const ErrorRow> rows) {
    LogLogChart chart{"Relative error vs grid side", "grid side n", "relative error", {}};
    std::map<int, PlotSeries> by_digits;  // -1 keys the unrounded series
    for (const auto& row : rows) {
        const int key = row.digits.value_or(-1);
        auto& s = by_digits[key];
        if (s.name.empty()) {
            s.name = row.digits ? fmt::format("m = {}", *row.digits) : "no rounding";
            s.dashed = !row.digits;
        }
        s.points.emplace_back(static_cast<double>(row.n), row.error);
    }
    for (auto& [key, s] : by_digits) {
        if (key >= 0) chart.series.push_back(std::move(s));
    }
    if (auto it = by_digits.find(-1); it != by_digits.end()) chart.series.push_back(std::move(it->second));
    return render_svg(chart);
}

std::string scaling_svg(const ScalingReport& report) {
    LogLogChart chart{"Operations per matrix-vector product", "N", "operations", {}};
    std::map<int, PlotSeries> mult, add;
    PlotSeries naive{"conventional N^2", {}, true};
    std::size_t last_n = 0;
    for (const auto& row : report.rows) {
        const auto total = static_cast<double>(row.total);
        auto& sm = mult[row.digits];
        sm.name = fmt::format("mult, m = {}", row.digits);
        sm.points.emplace_back(total, static_cast<double>(row.measured.multiplications));
        auto& sa = add[row.digits];
        sa.name = fmt::format("add, m = {}", row.digits);
        sa.dashed = true;
        sa.points.emplace_back(total, static_cast<double>(row.measured.additions));
        if (row.n != last_n) {
            naive.points.emplace_back(total, static_cast<double>(row.naive.multiplications));
            last_n = row.n;
        }
    }
    for (auto& [m, s] : mult) chart.series.push_back(std::move(s));
    for (auto& [m, s] : add) chart.series.push_back(std::move(s));
    chart.series.push_back(std::move(naive));
    return render_svg(chart);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out.flush()) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at " + path.string());
    }
}

void emit_csv(std::span<const ErrorRow> rows, const std::filesystem::path& path) {
    write_file(path, table1_csv(rows));
}
void emit_csv(const ScalingReport& report, const std::filesystem::path& path) {
    write_file(path, scaling_csv(report));
}
void emit_svg(std::span<const ErrorRow> rows, const std::filesystem::path& path) {
    write_file(path, table1_svg(rows));
}
void emit_svg(const ScalingReport& report, const std::filesystem::path& path) {
    write_file(path, scaling_svg(report));
}

}  // namespace invop
