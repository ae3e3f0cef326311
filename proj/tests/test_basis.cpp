#include "morawetz/basis.hpp"
#include "morawetz/field.hpp"
#include "morawetz/operators.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace morawetz;

TEST(Hermite1d, NodalConditions)
{
    for (int k = 0; k < 4; ++k) {
        for (int node = 0; node < 2; ++node) {
            for (int order = 0; order < 2; ++order) {
                const double expected = (k == 2 * node + order) ? 1.0 : 0.0;
                EXPECT_DOUBLE_EQ(hermite1d(k, static_cast<double>(node), order), expected)
                    << "k=" << k << " node=" << node << " order=" << order;
            }
        }
    }
}

TEST(Hermite1d, Examples)
{
    EXPECT_DOUBLE_EQ(hermite1d(0, 0.0, 0), 1.0);
    EXPECT_DOUBLE_EQ(hermite1d(0, 1.0, 0), 0.0);
    EXPECT_DOUBLE_EQ(hermite1d(1, 0.0, 1), 1.0);
    EXPECT_DOUBLE_EQ(hermite1d(1, 0.0, 0), 0.0);
    EXPECT_DOUBLE_EQ(hermite1d(0, 0.5, 0), 0.5);
    EXPECT_DOUBLE_EQ(hermite1d(0, 0.5, 0) + hermite1d(2, 0.5, 0), 1.0);
}

TEST(Hermite1d, DerivativesMatchFiniteDifferences)
{
    const double h = 1e-6;
    for (int k = 0; k < 4; ++k)
        for (double s : {0.1, 0.37, 0.8}) {
            for (int o = 0; o < 2; ++o) {
                const double fd = (hermite1d(k, s + h, o) - hermite1d(k, s - h, o)) / (2 * h);
                EXPECT_NEAR(hermite1d(k, s, o + 1), fd, 1e-7);
            }
        }
}

TEST(Shape2d, ValueAtOwnNode)
{
    EXPECT_DOUBLE_EQ(shape2d(local_index(0, 0, 0, 0), 0.0, 0.0, 0, 0, 0.5, 0.25), 1.0);
}

TEST(Shape2d, PhysicalDerivativeNormalisation)
{
    EXPECT_DOUBLE_EQ(shape2d(local_index(0, 0, 1, 0), 0.0, 0.0, 1, 0, 0.5, 0.25), 1.0);
    EXPECT_DOUBLE_EQ(shape2d(local_index(1, 1, 0, 1), 1.0, 1.0, 0, 1, 0.5, 0.25), 1.0);
    EXPECT_DOUBLE_EQ(shape2d(local_index(1, 0, 1, 1), 1.0, 0.0, 1, 1, 0.5, 0.25), 1.0);
}

TEST(Shape2d, ValuePartitionOfUnity)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const double sx = U(rng), st = U(rng);
        double s = 0.0;
        for (int nt = 0; nt < 2; ++nt)
            for (int nx = 0; nx < 2; ++nx) s += shape2d(local_index(nx, nt, 0, 0), sx, st, 0, 0, 0.3, 0.7);
        EXPECT_NEAR(s, 1.0, 1e-15);
    }
}

TEST(Shape2d, JetsAgreeWithShape2d)
{
    const auto J = shape_jets(0.3, 0.6, 0.4, 0.2);
    for (int l = 0; l < 16; ++l) {
        EXPECT_DOUBLE_EQ(J[l].v, shape2d(l, 0.3, 0.6, 0, 0, 0.4, 0.2));
        EXPECT_DOUBLE_EQ(J[l].v_x, shape2d(l, 0.3, 0.6, 1, 0, 0.4, 0.2));
        EXPECT_DOUBLE_EQ(J[l].v_t, shape2d(l, 0.3, 0.6, 0, 1, 0.4, 0.2));
        EXPECT_DOUBLE_EQ(J[l].v_xx, shape2d(l, 0.3, 0.6, 2, 0, 0.4, 0.2));
        EXPECT_DOUBLE_EQ(J[l].v_tt, shape2d(l, 0.3, 0.6, 0, 2, 0.4, 0.2));
        EXPECT_DOUBLE_EQ(J[l].v_xt, shape2d(l, 0.3, 0.6, 1, 1, 0.4, 0.2));
    }
}

TEST(Interpolation, ReproducesBicubics)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Polynomial2 p(3, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) p.coef(i, k) = U(rng);
    const Mesh m = build_mesh(Geometry::impedance(-0.7, 1.3, 0.9), 3, 2);
    const DiscreteField f = interpolate(m, [&](double x, double t) { return p.jet(x, t); });
    std::uniform_real_distribution<double> X(-0.7, 1.3), Tt(0.0, 0.9);
    for (int k = 0; k < 25; ++k) {
        const double x = X(rng), t = Tt(rng);
        const Jet2 a = f.evaluate(x, t);
        const Jet2 b = p.jet(x, t);
        EXPECT_NEAR(a.v, b.v, 1e-13);
        EXPECT_NEAR(a.v_x, b.v_x, 1e-12);
        EXPECT_NEAR(a.v_t, b.v_t, 1e-12);
        EXPECT_NEAR(a.v_xx, b.v_xx, 1e-11);
        EXPECT_NEAR(a.v_tt, b.v_tt, 1e-11);
        EXPECT_NEAR(a.v_xt, b.v_xt, 1e-11);
    }
}

TEST(Interpolation, C1PatchTest)
{
    const Mesh m = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 2, 2);
    std::mt19937_64 rng(5);
    const DiscreteField f = random_field(m, rng);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        // Interior vertical edge x = 0 between cells jx = 0 and jx = 1.
        for (std::size_t it = 0; it < 2; ++it) {
            const double st = U(rng);
            const Jet2 a = f.cell_jet(it, 0, 1.0, st);
            const Jet2 b = f.cell_jet(it, 1, 0.0, st);
            EXPECT_NEAR(a.v, b.v, 1e-13);
            EXPECT_NEAR(a.v_x, b.v_x, 1e-13);
            EXPECT_NEAR(a.v_t, b.v_t, 1e-13);
        }
        // Interior horizontal edge t = 0.5 between cells it = 0 and it = 1.
        for (std::size_t jx = 0; jx < 2; ++jx) {
            const double sx = U(rng);
            const Jet2 a = f.cell_jet(0, jx, sx, 1.0);
            const Jet2 b = f.cell_jet(1, jx, sx, 0.0);
            EXPECT_NEAR(a.v, b.v, 1e-13);
            EXPECT_NEAR(a.v_x, b.v_x, 1e-13);
            EXPECT_NEAR(a.v_t, b.v_t, 1e-13);
        }
    }
}
