#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracbeam/cubic.hpp"
#include "oracles.hpp"

using namespace fracbeam;

namespace {

double theta(double a, double b, double c, double d) {
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c -
           27 * a * a * d * d;
}

}  // namespace

TEST(Cubic, DiscriminantFormula) {
    const Cubic p{2.0, -3.0, 0.5, 1.25};
    EXPECT_DOUBLE_EQ(discriminant(p), theta(2.0, -3.0, 0.5, 1.25));
}

TEST(Cubic, ThreeDistinctRoots) {
    // (x - 1)(x - 2)(x - 3)
    const auto r = solve_cubic({1.0, -6.0, 11.0, -6.0});
    EXPECT_EQ(r.multiplicity, RootMultiplicity::ThreeDistinct);
    ASSERT_EQ(r.roots.size(), 3u);
    EXPECT_NEAR(r.roots[0], 1.0, 1e-12);
    EXPECT_NEAR(r.roots[1], 2.0, 1e-12);
    EXPECT_NEAR(r.roots[2], 3.0, 1e-12);
    EXPECT_GT(r.discriminant, 0.0);
}

TEST(Cubic, OneRealRoot) {
    // (x - 2)(x^2 + 1)
    const auto r = solve_cubic({1.0, -2.0, 1.0, -2.0});
    EXPECT_EQ(r.multiplicity, RootMultiplicity::OneReal);
    ASSERT_EQ(r.roots.size(), 1u);
    EXPECT_NEAR(r.roots[0], 2.0, 1e-12);
}

TEST(Cubic, RepeatedRootFlagged) {
    // (x - 1)^2 (x + 2)
    const auto r = solve_cubic({1.0, 0.0, -3.0, 2.0});
    EXPECT_EQ(r.multiplicity, RootMultiplicity::Repeated);
    ASSERT_FALSE(r.roots.empty());
    EXPECT_NEAR(r.roots.front(), -2.0, 1e-9);
    EXPECT_NEAR(r.roots.back(), 1.0, 1e-6);
}

// Property: on random draws outside the degeneracy band, the sign of the
// discriminant predicts the real-root count of a companion-matrix solve.
TEST(Cubic, RootCountAgreesWithDiscriminantSign) {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0, three = 0;
    for (int i = 0; i < 10000; ++i) {
        const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (std::abs(a) < 1e-3) continue;
        const double th = theta(a, b, c, d);
        if (std::abs(th) < 1e-10) continue;
        const auto ref = oracle::companion_real_roots(a, b, c, d);
        const auto got = solve_cubic({a, b, c, d});
        ASSERT_EQ(ref.size(), th > 0.0 ? 3u : 1u) << a << ' ' << b << ' ' << c << ' ' << d;
        ASSERT_EQ(got.roots.size(), ref.size()) << a << ' ' << b << ' ' << c << ' ' << d;
        for (std::size_t k = 0; k < ref.size(); ++k) {
            EXPECT_NEAR(got.roots[k], ref[k], 1e-6 * std::max(1.0, std::abs(ref[k])));
        }
        ++checked;
        three += th > 0.0;
    }
    EXPECT_GT(checked, 9000);
    EXPECT_GT(three, 500);
}

TEST(Cubic, RootsAreRoots) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 2000; ++i) {
        const Cubic p{u(rng), u(rng), u(rng), u(rng)};
        if (std::abs(p.c3) < 1e-2) continue;
        for (double x : solve_cubic(p).roots) {
            const double scale = std::abs(p.c3 * x * x * x) + std::abs(p.c2 * x * x) +
                                 std::abs(p.c1 * x) + std::abs(p.c0);
            EXPECT_LT(std::abs(p(x)), 1e-10 * std::max(1.0, scale));
        }
    }
}
