// invop: assemble, invert, quantize and apply discrete Poisson inverses;
// run the iterative baselines and the reproduction benchmarks.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "invop/apply_plan.hpp"
#include "invop/bench.hpp"
#include "invop/cache.hpp"
#include "invop/dense.hpp"
#include "invop/grid.hpp"
#include "invop/iterative.hpp"
#include "invop/quant.hpp"

namespace fs = std::filesystem;
using namespace invop;

namespace {

constexpr std::size_t kDefaultMaxSide = 41;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridOptions {
    std::size_t side = 0;
    std::size_t nx = 0;
    std::size_t ny = 0;

    void attach(CLI::App& cmd) {
        auto* g = cmd.add_option("--grid", side, "Square grid side (sets nx = ny)");
        cmd.add_option("--nx", nx, "Points along x")->excludes(g);
        cmd.add_option("--ny", ny, "Points along y")->excludes(g);
    }

    Grid2D grid(bool large) const {
        std::size_t x = side ? side : nx;
        std::size_t y = side ? side : ny;
        if (x == 0 || y == 0) throw UsageError("grid size required: --grid n or --nx/--ny");
        if (!large && std::max(x, y) > kDefaultMaxSide) {
            throw UsageError(fmt::format("grid side above {} needs --large", kDefaultMaxSide));
        }
        return Grid2D(x, y);
    }
};

std::string default_cache_dir() {
    if (const char* env = std::getenv("INVOP_CACHE"); env && *env) return env;
    return "cache";
}

std::optional<int> optional_digits(const CLI::Option* opt, int value) {
    return opt->count() ? std::optional<int>(value) : std::nullopt;
}

std::vector<double> problem_rhs(const Grid2D& grid, const std::string& problem,
                                const std::string& vector_path) {
    if (!problem.empty()) {
        if (problem != "eq4") throw UsageError("unknown problem '" + problem + "' (known: eq4)");
        return assemble_rhs(grid, test_problem(grid));
    }
    if (vector_path.empty()) throw UsageError("need --problem eq4 or --vector PATH");
    auto rhs = read_vector_file(vector_path);
    if (rhs.size() != grid.size()) {
        throw UsageError(fmt::format("{} has {} values, grid has {} points", vector_path,
                                     rhs.size(), grid.size()));
    }
    return rhs;
}

void emit_vector(const std::string& out, const std::vector<double>& values) {
    if (out.empty()) {
        std::cout << format_vector(values);
    } else {
        write_vector_file(out, values);
    }
}

void print_counters(std::ostream& os, const OpCounters& c) {
    os << "multiplications " << c.multiplications << "\nadditions " << c.additions << '\n';
}

std::vector<std::size_t> bench_sides(const std::vector<std::size_t>& requested,
                                     std::vector<std::size_t> defaults, bool large) {
    auto sides = requested.empty() ? std::move(defaults) : requested;
    if (requested.empty() && large) sides.push_back(81);
    for (const auto n : sides) {
        if (n < 3) throw UsageError("benchmark grid sides must be at least 3");
        if (!large && n > kDefaultMaxSide) {
            throw UsageError(fmt::format("grid side {} needs --large", n));
        }
    }
    return sides;
}

void write_report(const std::string& out, const std::string& format, const std::string& csv,
                  const std::string& svg) {
    const std::string& body = format == "svg" ? svg : csv;
    if (out.empty()) {
        std::cout << body;
    } else {
        write_file(out, body);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct Poisson solves through a quantized, precomputed inverse"};
    app.require_subcommand(1);

    std::string cache_dir = default_cache_dir();
    app.add_option("--cache", cache_dir, "Cache directory (default $INVOP_CACHE or ./cache)");

    GridOptions grid_opts;
    bool large = false;
    std::string out;
    std::string problem;
    std::string vector_path;
    std::string matrix_path;
    std::string format = "csv";
    int digits = 0;
    double omega = 0.0;
    double tol = 1e-8;
    std::uint64_t max_iter = 1'000'000;
    std::vector<std::size_t> sides;
    std::vector<int> digit_list;

    auto add_large = [&](CLI::App* cmd) {
        cmd->add_flag("--large", large, "Allow grid sides above 41 (dense O(N^3) inversion)");
    };

    auto* assemble_cmd = app.add_subcommand("assemble", "Build the operator matrix");
    grid_opts.attach(*assemble_cmd);
    add_large(assemble_cmd);
    assemble_cmd->add_option("--out", out, "Write the matrix file here");
    assemble_cmd->add_option("--problem", problem, "Also print the RHS of a built-in problem");

    auto* invert_cmd = app.add_subcommand("invert", "Invert the operator (cached)");
    grid_opts.attach(*invert_cmd);
    add_large(invert_cmd);
    invert_cmd->add_option("--out", out, "Also write the inverse here");

    auto* quantize_cmd = app.add_subcommand("quantize", "Round the inverse to m decimal digits");
    grid_opts.attach(*quantize_cmd);
    add_large(quantize_cmd);
    quantize_cmd->add_option("--digits", digits, "Digits after the decimal point")
        ->required()
        ->check(CLI::Range(0, kMaxDigits));
    quantize_cmd->add_option("--out", out, "Also write the quantized matrix here");

    auto* apply_cmd = app.add_subcommand("apply", "Multiply a matrix file by a vector file");
    apply_cmd->add_option("--matrix", matrix_path, "Matrix file (dense or quantized)")
        ->required()
        ->check(CLI::ExistingFile);
    apply_cmd->add_option("--vector", vector_path, "Vector file, one value per line")
        ->required()
        ->check(CLI::ExistingFile);
    apply_cmd->add_option("--out", out, "Write the product here instead of stdout");

    auto* direct_cmd = app.add_subcommand("solve-direct", "Assemble, invert, quantize, apply");
    grid_opts.attach(*direct_cmd);
    add_large(direct_cmd);
    auto* direct_digits = direct_cmd->add_option("--digits", digits, "Round the inverse first")
                              ->check(CLI::Range(0, kMaxDigits));
    direct_cmd->add_option("--problem", problem, "Built-in problem (eq4)");
    direct_cmd->add_option("--vector", vector_path, "Right-hand side file");
    direct_cmd->add_option("--out", out, "Write the solution vector here");

    auto* sor_cmd = app.add_subcommand("solve-sor", "SOR / Gauss-Seidel baseline");
    grid_opts.attach(*sor_cmd);
    add_large(sor_cmd);
    sor_cmd->add_option("--omega", omega, "Relaxation factor; <= 0 selects the optimum");
    sor_cmd->add_option("--tol", tol, "Relative correction tolerance");
    sor_cmd->add_option("--max-iter", max_iter, "Sweep limit");
    sor_cmd->add_option("--problem", problem, "Built-in problem (eq4)");
    sor_cmd->add_option("--vector", vector_path, "Right-hand side file");
    sor_cmd->add_option("--out", out, "Write the solution vector here");

    auto* table_cmd = app.add_subcommand("bench-table1", "Error table for rounded inverses");
    add_large(table_cmd);
    table_cmd->add_option("--sides", sides, "Grid sides (default 5 11 21 41)");
    table_cmd->add_option("--out", out, "Output file (default stdout)");
    table_cmd->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));

    auto* scaling_cmd = app.add_subcommand("bench-scaling", "Operation counts versus N");
    add_large(scaling_cmd);
    scaling_cmd->add_option("--sides", sides, "Grid sides (default 11 21 41)");
    scaling_cmd->add_option("--digits", digit_list, "Digit counts (default 2 4 6)")
        ->check(CLI::Range(0, kMaxDigits));
    scaling_cmd->add_option("--out", out, "Output file (default stdout)");
    scaling_cmd->add_option("--format", format, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*assemble_cmd) {
            const Grid2D grid = grid_opts.grid(large);
            const auto op = build_uniform(grid);
            if (!out.empty()) write_matrix_file(out, op.matrix);
            if (!problem.empty()) {
                std::cout << format_vector(problem_rhs(grid, problem, {}));
            } else {
                std::cout << fmt::format("N {}\ninterior {}\nboundary {}\n", grid.size(),
                                         grid.interior_count(), grid.boundary_count());
            }
        } else if (*invert_cmd) {
            const Grid2D grid = grid_opts.grid(large);
            MatrixCache cache(cache_dir);
            const auto inverse = cache.inverse(grid);
            if (!out.empty()) write_matrix_file(out, inverse);
            std::cout << fmt::format("N {}\nresidual {:.3e}\n", grid.size(),
                                     residual_check(build_uniform(grid), inverse));
        } else if (*quantize_cmd) {
            const Grid2D grid = grid_opts.grid(large);
            MatrixCache cache(cache_dir);
            const auto q = cache.quantized(grid, digits);
            if (!out.empty()) write_matrix_file(out, q);
            const auto stats = sparsity_stats(q);
            std::uint64_t shared = 0;
            for (const auto d : stats.distinct_per_column) shared += d;
            std::cout << fmt::format("N {}\ndigits {}\nnonzeros {}\nplanned_multiplications {}\n",
                                     q.size(), q.digits(), stats.nonzero_count, shared);
        } else if (*apply_cmd) {
            const auto payload = read_matrix_file(matrix_path);
            const auto x = read_vector_file(vector_path);
            const ApplyResult result = std::visit(
                [&](const auto& m) -> ApplyResult {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, DenseMatrix>) {
                        return apply_dense(m, x);
                    } else {
                        return invop::apply(build_plan(m), x);
                    }
                },
                payload);
            emit_vector(out, result.values);
            print_counters(std::cerr, result.counters);
        } else if (*direct_cmd) {
            const Grid2D grid = grid_opts.grid(large);
            const auto rhs = problem_rhs(grid, problem, vector_path);
            MatrixCache cache(cache_dir);
            const auto m = optional_digits(direct_digits, digits);
            const ApplyResult result = m ? invop::apply(build_plan(cache.quantized(grid, *m)), rhs)
                                         : apply_dense(cache.inverse(grid), rhs);
            if (!out.empty()) write_vector_file(out, result.values);
            print_counters(std::cout, result.counters);
            if (problem == "eq4") {
                std::cout << fmt::format("error {:.6g}\n", relative_error(result.values, grid));
            }
        } else if (*sor_cmd) {
            const Grid2D grid = grid_opts.grid(large);
            const auto rhs = problem_rhs(grid, problem, vector_path);
            const double w = omega > 0.0 ? omega : optimal_omega(grid);
            const auto report = sor_solve(grid, rhs, w, tol, max_iter);
            if (!out.empty()) write_vector_file(out, report.solution);
            std::cout << fmt::format(
                "omega {:.6f}\niterations {}\noperations {}\nconverged {}\ncorrection {:.3e}\n", w,
                report.iterations, report.operations, report.converged ? "yes" : "no",
                report.final_correction);
            if (problem == "eq4") {
                std::cout << fmt::format("error {:.6g}\n", relative_error(report.solution, grid));
            }
            if (!report.converged) return 2;
        } else if (*table_cmd) {
            MatrixCache cache(cache_dir);
            const auto s = bench_sides(sides, {5, 11, 21, 41}, large);
            const auto digit_rows = default_table1_digits();
            const auto rows =
                run_table1(s, digit_rows, [&](const Grid2D& g) { return cache.inverse(g); });
            write_report(out, format, table1_csv(rows), table1_svg(rows));
        } else if (*scaling_cmd) {
            MatrixCache cache(cache_dir);
            const auto s = bench_sides(sides, {11, 21, 41}, large);
            if (digit_list.empty()) digit_list = {2, 4, 6};
            const auto report =
                run_scaling(s, digit_list, [&](const Grid2D& g) { return cache.inverse(g); });
            write_report(out, format, scaling_csv(report), scaling_svg(report));
            for (const auto& fit : report.fits) {
                std::cerr << fmt::format("m={} slope_mult={:.4f} slope_add={:.4f} slope_naive={:.4f}\n",
                                         fit.digits, fit.mult, fit.add, fit.naive_mult);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "invop: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
