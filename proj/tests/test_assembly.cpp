#include "morawetz/analysis.hpp"
#include "morawetz/assembly.hpp"
#include "morawetz/identities.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace morawetz;

namespace {

FormulationParams reference(const Geometry& g)
{
    FormulationParams p;
    p.xi = 1.0;
    p.nu = 2.0;
    p.A_Q = 1.0;
    p.A_O0 = 1.0;
    p.A_SD = 1.0;
    p.beta = beta_sharp(g, p.c, p.theta);
    return p;
}

double form(const BandedMatrix& B, const DiscreteField& u, const DiscreteField& v)
{
    return dot(v.coeffs(), B.multiply(u.coeffs()));
}

} // namespace

TEST(AssembleB, ConstantTrialFunction)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 4, 3);
    FormulationParams p = reference(g);
    p.A_O0 = 0.7;
    const BandedMatrix B = assemble_b(m, p);
    std::mt19937_64 rng(1);
    const DiscreteField v = random_field(m, rng);
    const DiscreteField one = constant_field(m);
    const double mass = integrate_region(m, Region::bottom, 6, std::nullopt,
                                         [&](std::size_t it, std::size_t jx, double sx, double st, double, double) {
                                             return v.cell_jet(it, jx, sx, st).v;
                                         });
    EXPECT_NEAR(form(B, one, v), p.A_O0 / g.T() * mass, 1e-12 * (1.0 + std::abs(mass)));
}

TEST(AssembleB, ConstantsInKernelWithoutInitialPenalty)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 6, 6);
    FormulationParams p = reference(g);
    p.A_O0 = 0.0;
    const BandedMatrix B = assemble_b(m, p);
    const Vector r = B.multiply(constant_field(m).coeffs());
    EXPECT_LE(norm2(r), 1e-12 * B.frobenius());
    EXPECT_THROW(lu_factor(B), SingularMatrixError);
}

TEST(AssembleB, RandomFieldsCoercive)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 4, 4);
    const FormulationParams p = reference(g);
    const BandedMatrix B = assemble_b(m, p);
    const SymBandMatrix G = assemble_gram(m, NormKind::V, p);
    const double alpha = coercivity_constant(p, g, false);
    EXPECT_DOUBLE_EQ(alpha, 0.25);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 50; ++k) {
        const DiscreteField v = random_field(m, rng);
        EXPECT_GE(form(B, v, v), alpha * G.quadratic(v.coeffs()));
    }
}

TEST(AssembleB, NotSymmetric)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 3, 3);
    const BandedMatrix B = assemble_b(m, reference(g));
    double asym = 0.0;
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) asym = std::max(asym, std::abs(B.at(i, j) - B.at(j, i)));
    EXPECT_GT(asym, 1e-3 * B.max_abs());
}

TEST(AssembleB, BandStructure)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    for (auto [nx, nt] : {std::pair<std::size_t, std::size_t>{5, 5}, {7, 3}, {2, 6}}) {
        const Mesh m = build_mesh(g, nx, nt);
        const BandedMatrix B = assemble_b(m, reference(g));
        EXPECT_LE(B.occupied_bandwidth(), m.dofs().bandwidth());
        // Entries between DOFs of non-neighbouring nodes are exactly zero.
        const DofMap& dm = m.dofs();
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = 0; j < B.size(); ++j) {
                if (!B.in_band(i, j)) continue;
                const DofLocation a = dm.location(i), b = dm.location(j);
                const auto far = [](std::size_t p, std::size_t q) { return (p > q ? p - q : q - p) > 1; };
                if (far(a.i, b.i) || far(a.j, b.j)) EXPECT_EQ(B(i, j), 0.0);
            }
    }
}

TEST(AssembleB, DeterministicAcrossThreadCounts)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 6, 5);
    const BandedMatrix a = assemble_b(m, reference(g), {6, 1});
    const BandedMatrix b = assemble_b(m, reference(g), {6, 3});
    EXPECT_EQ(a.data(), b.data());
}

TEST(AssembleB, InvalidParams)
{
    const Mesh m = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 2, 2);
    FormulationParams p;
    p.xi = 0.0;
    EXPECT_THROW(assemble_b(m, p), ConfigError);
    p.xi = 1.0;
    p.c = -1.0;
    EXPECT_THROW(assemble_b(m, p), ConfigError);
    p.c = 1.0;
    p.theta = 0.0;
    EXPECT_THROW(assemble_b(m, p), ConfigError);
}

TEST(AssembleB, ContinuityBound)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 4, 4);
    const FormulationParams p = reference(g);
    const BandedMatrix B = assemble_b(m, p);
    const SymBandMatrix G = assemble_gram(m, NormKind::V, p);
    const double Cb = continuity_constants(p, g).C_b;
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const DiscreteField u = random_field(m, rng), v = random_field(m, rng);
        EXPECT_LE(std::abs(form(B, u, v)), Cb * field_norm(G, u) * field_norm(G, v));
    }
}

TEST(AssembleF, ZeroData)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 3, 3);
    ProblemSpec prob;
    const Vector F = assemble_F(m, reference(g), prob);
    for (double v : F) EXPECT_EQ(v, 0.0);
}

TEST(AssembleF, P3OnlyInitialTerms)
{
    const ProblemSpec prob = catalog(ProblemId::P3);
    const Mesh m = build_mesh(prob.geometry, 4, 4);
    const FormulationParams p = reference_params(prob);
    const Vector F = assemble_F(m, p, prob);
    // Only the bottom row of nodes carries load.
    const DofMap& dm = m.dofs();
    double bottom = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) {
        if (dm.location(k).i == 0) {
            bottom += std::abs(F[k]);
        } else {
            EXPECT_EQ(F[k], 0.0);
        }
    }
    EXPECT_GT(bottom, 0.0);
}

TEST(AssembleF, P1ConstantTestFunction)
{
    const ProblemSpec prob = catalog(ProblemId::P1);
    const Mesh m = build_mesh(prob.geometry, 6, 6);
    const Vector F = assemble_F(m, reference_params(prob), prob);
    EXPECT_NEAR(dot(F, constant_field(m).coeffs()), 0.0, 1e-12);
}

TEST(AssembleF, ParameterMismatch)
{
    const ProblemSpec prob = catalog(ProblemId::P2);
    const Mesh m = build_mesh(prob.geometry, 2, 2);
    FormulationParams p;
    EXPECT_THROW(assemble_F(m, p, prob), ConfigError);
}

TEST(AssembleF, ConsistencyWithInterpolant)
{
    const ProblemSpec prob = catalog(ProblemId::P1);
    const FormulationParams p = reference_params(prob);
    std::vector<double> res;
    for (std::size_t N : {4u, 8u, 16u}) {
        const Mesh m = build_mesh(prob.geometry, N, N);
        const BandedMatrix B = assemble_b(m, p);
        const Vector F = assemble_F(m, p, prob);
        const DiscreteField Pi = interpolate(m, prob.exact->jet);
        Vector r = B.multiply(Pi.coeffs());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= F[i];
        res.push_back(norm2(r) / norm2(F));
    }
    EXPECT_LT(res[1], res[0]);
    EXPECT_LT(res[2], res[1]);
}

TEST(AssembleStar, RequiresDirichletEnd)
{
    const Mesh m = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 2, 2);
    ProblemSpec prob;
    EXPECT_THROW(assemble_b_star(m, FormulationParams{}), ConfigError);
    EXPECT_THROW(assemble_F_star(m, FormulationParams{}, prob), ConfigError);
}

TEST(AssembleStar, ZeroDirichletDataLeavesLoadUnchanged)
{
    const Geometry g = Geometry::mixed(0.25, 1.0, 1.0);
    ProblemSpec prob;
    prob.geometry = g;
    prob.u0 = [](double x) { return std::sin(3 * x); };
    prob.u1 = [](double x) { return x * x; };
    prob.f = [](double x, double t) { return x + t; };
    const Mesh m = build_mesh(g, 3, 3);
    const FormulationParams p = reference(g);
    EXPECT_EQ(assemble_F_star(m, p, prob), assemble_F(m, p, prob));
}

TEST(AssembleStar, ConstantTrialMatchesB)
{
    const Geometry g = Geometry::mixed(0.25, 1.0, 1.0);
    const Mesh m = build_mesh(g, 3, 4);
    const FormulationParams p = reference(g);
    const BandedMatrix B = assemble_b(m, p);
    const BandedMatrix Bs = assemble_b_star(m, p);
    const Vector one = constant_field(m).coeffs();
    std::mt19937_64 rng(4);
    for (int k = 0; k < 10; ++k) {
        const DiscreteField v = random_field(m, rng);
        EXPECT_NEAR(dot(v.coeffs(), Bs.multiply(one)), dot(v.coeffs(), B.multiply(one)), 1e-12);
    }
}

TEST(AssembleStar, RandomFieldsCoercive)
{
    const Geometry g = Geometry::mixed(0.25, 1.0, 1.0);
    const Mesh m = build_mesh(g, 4, 4);
    const FormulationParams p = reference(g);
    const BandedMatrix B = assemble_b_star(m, p);
    const SymBandMatrix G = assemble_gram(m, NormKind::Vstar, p);
    const double alpha = coercivity_constant(p, g, true);
    EXPECT_DOUBLE_EQ(alpha, 0.25);
    std::mt19937_64 rng(5);
    for (int k = 0; k < 50; ++k) {
        const DiscreteField v = random_field(m, rng);
        EXPECT_GE(form(B, v, v), alpha * G.quadratic(v.coeffs()));
    }
}

TEST(Gram, ConstantHasInitialMassOnly)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 4, 4);
    const SymBandMatrix G = assemble_gram(m, NormKind::V, FormulationParams{});
    EXPECT_NEAR(G.quadratic(constant_field(m).coeffs()), 2.0, 1e-11);
}

TEST(Gram, SymmetricPositiveDefiniteAllKinds)
{
    const Geometry g = Geometry::mixed(0.25, 1.0, 1.0);
    const Mesh m = build_mesh(g, 3, 4);
    for (NormKind k : {NormKind::L2, NormKind::H1scaled, NormKind::V, NormKind::Vstar}) {
        const SymBandMatrix G = assemble_gram(m, k, FormulationParams{});
        EXPECT_NO_THROW(cholesky_factor(G)) << to_string(k);
    }
    const Mesh mi = build_mesh(Geometry::impedance(-1.0, 1.0, 1.0), 4, 3);
    for (NormKind k : {NormKind::L2, NormKind::H1scaled, NormKind::V}) {
        const SymBandMatrix G = assemble_gram(mi, k, FormulationParams{});
        EXPECT_NO_THROW(cholesky_factor(G)) << to_string(k);
    }
    EXPECT_THROW(assemble_gram(mi, NormKind::Vstar, FormulationParams{}), ConfigError);
}

TEST(Gram, SymmetricEntrywiseAgainstFullAssembly)
{
    // Assemble the V inner product as a general matrix and compare both triangles.
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    const Mesh m = build_mesh(g, 3, 3);
    const FormulationParams p;
    const NormContext ctx(NormKind::V, g, p.c);
    BandedMatrix A(m.num_dofs(), m.dofs().bandwidth(), m.dofs().bandwidth());
    for (Region r : all_regions)
        add_bilinear(A, m, r,
                     [&](const Jet2& u, const Jet2& v, double, double) {
                         const auto a = ctx.features(r, u, waveop(u, p.c));
                         const auto b = ctx.features(r, v, waveop(v, p.c));
                         double s = 0;
                         for (int k = 0; k < a.n; ++k) s += a.f[k] * b.f[k];
                         return s;
                     },
                     {});
    const SymBandMatrix G = assemble_gram(m, NormKind::V, p);
    const double scale = A.max_abs();
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) {
            EXPECT_NEAR(A.at(i, j), A.at(j, i), 1e-13 * scale);
            EXPECT_NEAR(A.at(i, j), G.at(i, j), 1e-13 * scale);
        }
}

TEST(Gram, L2BoundedByVNorm)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 0.7);
    const Mesh m = build_mesh(g, 4, 4);
    const FormulationParams p;
    const SymBandMatrix L2 = assemble_gram(m, NormKind::L2, p);
    const SymBandMatrix V = assemble_gram(m, NormKind::V, p);
    std::mt19937_64 rng(6);
    for (int k = 0; k < 50; ++k) {
        const DiscreteField v = random_field(m, rng);
        EXPECT_LE(L2.quadratic(v.coeffs()), 2.0 * g.T() * g.T() * V.quadratic(v.coeffs()));
    }
}

TEST(Gram, P1ExactL2Norm)
{
    const ProblemSpec prob = catalog(ProblemId::P1);
    const Mesh m = build_mesh(prob.geometry, 8, 8);
    const DiscreteField zero(m);
    EXPECT_NEAR(error_norms(zero, prob, {NormKind::L2}).at(NormKind::L2).abs, 0.609980898016996, 1e-12);
}
