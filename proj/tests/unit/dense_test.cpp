#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "invop/dense.hpp"
#include "invop/grid.hpp"

namespace invop {
namespace {

TEST(Invert, IdentityAndDiagonal) {
    EXPECT_EQ(invert(DenseMatrix::identity(4)), DenseMatrix::identity(4));
    const auto inv = invert(DenseMatrix(2, {2.0, 0.0, 0.0, 4.0}));
    EXPECT_EQ(inv, DenseMatrix(2, {0.5, 0.0, 0.0, 0.25}));
}

TEST(Invert, RequiresPivoting) {
    const auto inv = invert(DenseMatrix(2, {0.0, 1.0, 1.0, 0.0}));
    EXPECT_EQ(inv, DenseMatrix(2, {0.0, 1.0, 1.0, 0.0}));
}

TEST(Invert, SingularThrows) {
    EXPECT_THROW(invert(DenseMatrix(2, {1.0, 2.0, 2.0, 4.0})), SingularMatrixError);
    EXPECT_THROW(invert(DenseMatrix(3)), SingularMatrixError);
}

TEST(Invert, ThreeByFiveGridResidual) {
    const auto op = build_uniform(Grid2D(3, 5));
    EXPECT_LE(residual_check(op, invert(op)), 1e-12);
}

TEST(Invert, ResidualSmallOnPaperGrids) {
    for (const std::size_t n : {5, 11, 21}) {
        const auto op = build_uniform(Grid2D::square(n));
        EXPECT_LE(residual_check(op, invert(op)), 1e-8) << "n = " << n;
    }
}

TEST(Invert, DoubleInverseReproducesMatrix) {
    for (const auto grid : {Grid2D(3, 5), Grid2D::square(7), Grid2D(6, 4)}) {
        const auto a = build_uniform(grid).matrix;
        const auto back = invert(invert(a));
        for (std::size_t k = 0; k < a.entries().size(); ++k) {
            EXPECT_NEAR(back.entries()[k], a.entries()[k], 1e-6 * a.max_abs());
        }
    }
}

TEST(Invert, BoundaryRowsStayIdentity) {
    const Grid2D g = Grid2D::square(9);
    const auto inv = invert(build_uniform(g));
    for (std::size_t p = 0; p < g.size(); ++p) {
        if (!g.is_boundary(p)) continue;
        for (std::size_t q = 0; q < g.size(); ++q) {
            EXPECT_NEAR(inv(p, q), p == q ? 1.0 : 0.0, 1e-10);
        }
    }
}

TEST(Invert, Deterministic) {
    const auto a = build_uniform(Grid2D::square(11)).matrix;
    EXPECT_EQ(invert(a), invert(a));
}

TEST(ResidualCheck, Examples) {
    EXPECT_EQ(residual_check(DenseMatrix::identity(3), DenseMatrix::identity(3)), 0.0);
    EXPECT_EQ(residual_check(DenseMatrix::identity(3), DenseMatrix(3)), 1.0);
    EXPECT_THROW(residual_check(DenseMatrix::identity(3), DenseMatrix::identity(2)),
                 DimensionError);
}

TEST(ApplyDense, IdentityAndOnes) {
    const std::vector<double> x = {3.0, -1.0, 0.5, 2.0};
    const auto r = apply_dense(DenseMatrix::identity(4), x);
    EXPECT_EQ(r.values, x);
    EXPECT_EQ(r.counters, (OpCounters{16, 12}));

    const auto ones = apply_dense(DenseMatrix(3, std::vector<double>(9, 1.0)),
                                  std::vector<double>{1.0, 2.0, 3.0});
    EXPECT_EQ(ones.values, (std::vector<double>{6.0, 6.0, 6.0}));
    EXPECT_EQ(ones.counters, (OpCounters{9, 6}));
}

TEST(ApplyDense, MatchesBruteForce) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> entries(16), x(4);
        for (auto& v : entries) v = dist(rng);
        for (auto& v : x) v = dist(rng);
        const DenseMatrix m(4, entries);
        const auto r = apply_dense(m, x);
        for (std::size_t i = 0; i < 4; ++i) {
            double expected = 0.0;
            for (std::size_t j = 0; j < 4; ++j) expected += entries[i * 4 + j] * x[j];
            EXPECT_NEAR(r.values[i], expected, 1e-14);
        }
    }
}

TEST(ApplyDense, LengthMismatchThrows) {
    EXPECT_THROW(apply_dense(DenseMatrix::identity(3), std::vector<double>(2)), DimensionError);
}

}  // namespace
}  // namespace invop
