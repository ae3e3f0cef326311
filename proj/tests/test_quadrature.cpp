#include "morawetz/assembly.hpp"
#include "morawetz/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace morawetz;

TEST(Gauss01, Midpoint)
{
    const auto& g = gauss01(1);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_DOUBLE_EQ(g[0].x, 0.5);
    EXPECT_DOUBLE_EQ(g[0].w, 1.0);
}

TEST(Gauss01, TwoPoint)
{
    const auto& g = gauss01(2);
    EXPECT_NEAR(g[0].x, (3.0 - std::sqrt(3.0)) / 6.0, 1e-15);
    EXPECT_NEAR(g[1].x, (3.0 + std::sqrt(3.0)) / 6.0, 1e-15);
    EXPECT_NEAR(g[0].w, 0.5, 1e-15);
    EXPECT_NEAR(g[1].w, 0.5, 1e-15);
}

TEST(Gauss01, ExactnessDegree9WithFivePoints)
{
    double s = 0.0;
    for (const auto& q : gauss01(5)) s += q.w * std::pow(q.x, 9);
    EXPECT_NEAR(s, 0.1, 1e-15);
}

TEST(Gauss01, ExactnessAllOrders)
{
    for (int n = 1; n <= 32; ++n) {
        const auto& g = gauss01(n);
        double wsum = 0.0;
        for (const auto& q : g) {
            EXPECT_GT(q.w, 0.0);
            EXPECT_GT(q.x, 0.0);
            EXPECT_LT(q.x, 1.0);
            wsum += q.w;
        }
        EXPECT_NEAR(wsum, 1.0, 1e-14);
        const int deg = 2 * n - 1;
        double s = 0.0;
        for (const auto& q : g) s += q.w * std::pow(q.x, deg);
        EXPECT_NEAR(s, 1.0 / (deg + 1), 1e-14) << "n=" << n;
    }
}

TEST(Gauss01, OutOfRange)
{
    EXPECT_THROW(gauss01(0), ConfigError);
    EXPECT_THROW(gauss01(33), ConfigError);
}

TEST(ElementRule, TotalWeight)
{
    double s = 0.0;
    for (const auto& q : element_rule(1, 1, 0.0625, 0.03125)) s += q.w;
    EXPECT_DOUBLE_EQ(s, 0.001953125);
    s = 0.0;
    for (const auto& q : element_rule(6, 4, 0.3, 0.7)) s += q.w;
    EXPECT_NEAR(s, 0.21, 1e-15);
}

TEST(ElementRule, MeasureOfCylinder)
{
    const Mesh m = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 8, 5);
    const double area = integrate_region(m, Region::volume, 3, std::nullopt,
                                         [](std::size_t, std::size_t, double, double, double, double) { return 1.0; });
    EXPECT_NEAR(area, 2.0, 1e-14);
    const double xt = integrate_region(m, Region::volume, 3, std::nullopt,
                                       [](std::size_t, std::size_t, double, double, double x, double t) { return x * t; });
    EXPECT_NEAR(xt, 0.0, 1e-15);
}

TEST(SplitRule, MissReturnsTensorRule)
{
    const CellRule a = split_rule(0.5, 0.0, 0.25, 0.25, KinkLine{1.0, 1.0}, 6);
    const CellRule b = element_rule(6, 6, 0.25, 0.25);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].sx, b[k].sx);
        EXPECT_EQ(a[k].st, b[k].st);
        EXPECT_EQ(a[k].w, b[k].w);
    }
}

TEST(SplitRule, DiagonalCut)
{
    // x - t + 0 = 0 through corners (0,0) and (1,1) of the unit cell.
    const CellRule r = split_rule(0.0, 0.0, 1.0, 1.0, KinkLine{1.0, 0.0}, 4);
    EXPECT_EQ(r.size(), 2u * 16u);
    double s = 0.0;
    for (const auto& q : r) {
        EXPECT_GT(q.w, 0.0);
        s += q.w;
    }
    EXPECT_NEAR(s, 1.0, 1e-14);
}

TEST(SplitRule, AreaRightOfCharacteristic)
{
    const Mesh m = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 7, 5);
    const KinkLine line{1.0, 1.0};
    const double a = integrate_region(m, Region::volume, 4, line,
                                      [&](std::size_t, std::size_t, double, double, double x, double t) {
                                          return line.phi(x, t) > 0.0 ? 1.0 : 0.0;
                                      });
    EXPECT_NEAR(a, 1.5, 1e-13);
}

TEST(SplitRule, CubicsExactForRandomCuts)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double c = 0.3 + std::abs(U(rng));
        const double x0 = 0.4 * U(rng);
        const double hx = 0.5, ht = 0.4;
        const double xl = -0.2, tb = 0.1;
        std::array<double, 16> a{};
        for (double& v : a) v = U(rng);
        const auto poly = [&](double x, double t) {
            double s = 0.0;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) s += a[4 * i + k] * std::pow(x, i) * std::pow(t, k);
            return s;
        };
        double exact = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k)
                exact += a[4 * i + k] * (std::pow(xl + hx, i + 1) - std::pow(xl, i + 1)) / (i + 1) *
                         (std::pow(tb + ht, k + 1) - std::pow(tb, k + 1)) / (k + 1);
        double s = 0.0, wsum = 0.0;
        for (const auto& q : split_rule(xl, tb, hx, ht, KinkLine{c, x0}, 5)) {
            EXPECT_GT(q.w, 0.0);
            s += q.w * poly(xl + q.sx * hx, tb + q.st * ht);
            wsum += q.w;
        }
        EXPECT_NEAR(wsum, hx * ht, 1e-14 * hx * ht);
        EXPECT_NEAR(s, exact, 1e-12 * std::max(1.0, std::abs(exact)));
    }
}

TEST(SegmentRule, SplitPreservesWeightsAndExactness)
{
    double s = 0.0, w = 0.0;
    for (const auto& q : segment_rule(3, 2.0, 0.3)) {
        s += q.w * std::pow(q.x, 5);
        w += q.w;
    }
    EXPECT_NEAR(w, 2.0, 1e-15);
    EXPECT_NEAR(s, 2.0 / 6.0, 1e-15);
    EXPECT_EQ(segment_rule(3, 1.0, 0.0).size(), 3u);
    EXPECT_EQ(segment_rule(3, 1.0, 1.5).size(), 3u);
}
