#include "morawetz/field.hpp"
#include "morawetz/identities.hpp"
#include "morawetz/operators.hpp"
#include "morawetz/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace morawetz;

namespace {

FormulationParams params(double xi, double beta, double nu, double c)
{
    FormulationParams p;
    p.xi = xi;
    p.beta = beta;
    p.nu = nu;
    p.c = c;
    return p;
}

Polynomial2 random_poly(std::mt19937_64& rng, std::size_t deg)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Polynomial2 p(deg, deg);
    for (std::size_t i = 0; i <= deg; ++i)
        for (std::size_t k = 0; i + k <= deg; ++k) p.coef(i, k) = U(rng);
    return p;
}

} // namespace

TEST(Morawetz, AnnihilatesConstants)
{
    const Jet2 one{1.0, 0, 0, 0, 0, 0};
    EXPECT_EQ(morawetz::morawetz(one, 0.3, 0.7, params(1.3, 2.0, 2.0, 1.0), 1.0), 0.0);
}

TEST(Morawetz, QuadraticInSpace)
{
    const double x = 0.6;
    const Jet2 j{x * x, 2 * x, 0, 2, 0, 0};
    EXPECT_DOUBLE_EQ(morawetz::morawetz(j, x, 0.4, params(1.0, 7.0, 2.0, 1.0), 1.0), -2.0 * x * x);
}

TEST(Morawetz, LinearInTime)
{
    const Jet2 j{0.0, 0, 1.0, 0, 0, 0};
    EXPECT_DOUBLE_EQ(morawetz::morawetz(j, 0.5, 0.0, params(1.0, 2.0, 2.0, 1.0), 1.0), -4.0);
}

TEST(Waveop, Examples)
{
    EXPECT_DOUBLE_EQ(waveop(Jet2{0, 0, 0, 2.0, 0, 0}, 1.0), -2.0);
    // Travelling profile u = w(x - c t).
    const double c = 1.7;
    for (double y : {-0.3, 0.05, 0.4}) {
        const DoubleGaussian g = double_gaussian(y);
        const Jet2 j{g.w, g.dw, -c * g.dw, g.d2w, c * c * g.d2w, -c * g.d2w};
        EXPECT_NEAR(waveop(j, c), 0.0, 1e-12);
    }
    const double t = std::numbers::pi / 4;
    EXPECT_NEAR(waveop(exact::p1(0.0, t), 1.0), std::numbers::pi * std::numbers::pi / 2, 1e-13);
}

TEST(Polynomial2, ArithmeticAndDerivatives)
{
    // (x + 2t)(x - t) = x^2 + x t - 2 t^2
    const Polynomial2 a = Polynomial2::monomial(1, 0) + 2.0 * Polynomial2::monomial(0, 1);
    const Polynomial2 b = Polynomial2::monomial(1, 0) - Polynomial2::monomial(0, 1);
    const Polynomial2 p = a * b;
    EXPECT_DOUBLE_EQ(p(0.5, 0.25), 0.25 + 0.125 - 0.125);
    const Jet2 j = p.jet(0.5, 0.25);
    EXPECT_DOUBLE_EQ(j.v_x, 2 * 0.5 + 0.25);
    EXPECT_DOUBLE_EQ(j.v_t, 0.5 - 4 * 0.25);
    EXPECT_DOUBLE_EQ(j.v_xx, 2.0);
    EXPECT_DOUBLE_EQ(j.v_tt, -4.0);
    EXPECT_DOUBLE_EQ(j.v_xt, 1.0);
}

TEST(PointwiseIdentity, QuadraticBothSides)
{
    const Polynomial2 u = Polynomial2::monomial(2, 0);
    const FormulationParams p = params(0.8, 1.7, 2.5, 1.3);
    const double x = 0.7;
    const Polynomial2 lhs = morawetz::morawetz(u, p, 1.0) * waveop(u, p.c) + waveop(u, p.c) * morawetz::morawetz(u, p, 1.0);
    EXPECT_NEAR(lhs(x, 0.2), 8.0 * p.xi * p.c * p.c * x * x, 1e-13);
    EXPECT_LE(pointwise_identity_residual(u, u, x, 0.2, p, 1.0).residual, 1e-13);
}

TEST(PointwiseIdentity, Constants)
{
    const Polynomial2 one = Polynomial2::constant(1.0);
    const IdentityResidual r = pointwise_identity_residual(one, one, 0.1, 0.2, params(1, 2, 2, 1), 1.0);
    EXPECT_EQ(r.residual, 0.0);
}

TEST(PointwiseIdentity, RandomDegreeFour)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const Polynomial2 u = random_poly(rng, 4);
        const Polynomial2 v = random_poly(rng, 4);
        const FormulationParams p = params(0.1 + 2 * U(rng), 0.1 + 4 * U(rng), 1.1 + 2 * U(rng), 0.2 + 2 * U(rng));
        const double T = 0.5 + U(rng);
        const IdentityResidual r = pointwise_identity_residual(u, v, 2 * U(rng) - 1, T * U(rng), p, T);
        EXPECT_LE(r.relative(), 1e-11);
    }
}

TEST(IntegratedIdentity, ConstantsGiveZero)
{
    const Mesh m = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 3, 3);
    const DiscreteField one = constant_field(m);
    const IntegratedIdentity r = integrated_identity(one, one, params(1, 2, 2, 1));
    EXPECT_NEAR(r.m_volume, 0.0, 1e-15);
    EXPECT_NEAR(r.rhs(), 0.0, 1e-15);
}

TEST(IntegratedIdentity, ProductXtMatchesSymbolicParts)
{
    const Mesh m = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 4, 4);
    const DiscreteField u = interpolate(m, [](double x, double t) { return Jet2{x * t, t, x, 0, 0, 1.0}; });
    const IntegratedIdentity r = integrated_identity(u, u, params(0.7, 2.3, 1.5, 1.3));
    EXPECT_NEAR(r.m_volume, 0.0, 1e-13);
    EXPECT_NEAR(r.q_term, -5.38, 1e-12);
    EXPECT_NEAR(r.top_term, -5.587, 1e-12);
    EXPECT_NEAR(r.bottom_term, 2.3, 1e-12);
    EXPECT_NEAR(r.sigma_term, 8.667, 1e-12);
    EXPECT_LE(r.relative_gap(), 1e-12);
}

TEST(IntegratedIdentity, RandomFieldsOnEightByEight)
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Mesh m = build_mesh(Geometry::impedance(-0.6, 1.0, 0.8), 8, 8);
    for (int k = 0; k < 5; ++k) {
        const DiscreteField u = random_field(m, rng);
        const DiscreteField v = random_field(m, rng);
        const FormulationParams p = params(0.2 + U(rng), 0.5 + 3 * U(rng), 1.2 + U(rng), 0.5 + U(rng));
        EXPECT_LE(integrated_identity(u, v, p).relative_gap(), 1e-10);
    }
}

TEST(IntegratedIdentity, TravellingWaveHasNoVolumeTerm)
{
    const Mesh m = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 4, 4);
    const auto lin = [](double x, double t) { return Jet2{x - t, 1.0, -1.0, 0, 0, 0}; };
    const DiscreteField u = interpolate(m, lin);
    const IntegratedIdentity r = integrated_identity(u, u, params(1, 2, 2, 1));
    EXPECT_NEAR(r.m_volume, 0.0, 1e-14);
    EXPECT_LE(r.gap(), 1e-12);
}
