#pragma once

#include "morawetz/assembly.hpp"
#include "morawetz/errors.hpp"
#include "morawetz/field.hpp"
#include "morawetz/geometry.hpp"
#include "morawetz/linalg.hpp"
#include "morawetz/operators.hpp"
#include "morawetz/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace morawetz {

// ---------------------------------------------------------------------------------------------
// Parameter checks and theoretical constants

struct ValidationReport {
    double beta_threshold = 0.0;
    bool beta_ok = false;
    bool nu_ok = false;
    bool A_Q_positive = false;
    bool A_O0_positive = false;
    bool A_SD_ok = true; ///< A_SD >= xi, mixed problems only
    std::vector<std::string> messages;

    /// All sufficient conditions for coercivity hold.
    [[nodiscard]] bool coercive() const noexcept
    {
        return beta_ok && nu_ok && A_Q_positive && A_O0_positive && A_SD_ok;
    }
};

/// Lower bound on beta from the sign conditions of the multiplier terms.
inline double beta_threshold(const FormulationParams& p, const Geometry& g)
{
    const StarShape s = g.star_shape();
    const double r = s.L_I / (p.c * g.T());
    const double d = static_cast<double>(p.d);
    const double inv = 1.0 / (p.nu - 1.0);
    return std::max({p.xi * (d - 1.0), p.xi * inv * (r + 1.0), p.xi * inv * r * (p.theta + 1.0 / (s.delta_I * p.theta))});
}

inline ValidationReport validate_params(const FormulationParams& p, const Geometry& g)
{
    ValidationReport rep;
    rep.nu_ok = p.nu > 1.0;
    if (!rep.nu_ok) rep.messages.push_back("nu must exceed 1");
    if (rep.nu_ok) {
        rep.beta_threshold = beta_threshold(p, g);
        rep.beta_ok = p.beta >= rep.beta_threshold && p.xi > 0.0;
        if (!rep.beta_ok) {
            rep.messages.push_back("beta = " + std::to_string(p.beta) + " below coercivity threshold " +
                                   std::to_string(rep.beta_threshold));
        }
    }
    rep.A_Q_positive = p.A_Q > 0.0;
    if (!rep.A_Q_positive) rep.messages.push_back("A_Q = 0: non-coercive ablation");
    rep.A_O0_positive = p.A_O0 > 0.0;
    if (!rep.A_O0_positive) rep.messages.push_back("A_O0 = 0: constants lie in the kernel");
    if (g.has_dirichlet()) {
        rep.A_SD_ok = p.A_SD >= p.xi;
        if (!rep.A_SD_ok) rep.messages.push_back("A_SD must be at least xi");
    }
    if (!(p.c > 0.0) || !(p.theta > 0.0) || !(p.xi > 0.0)) {
        rep.beta_ok = false;
        rep.messages.push_back("xi, c and theta must be positive");
    }
    return rep;
}

/// beta# = max{d - 1, 1 + L_I/(cT), (theta + 1/(theta delta_I)) L_I/(cT)}.
inline double beta_sharp(const Geometry& g, double c, double theta, int d = 1)
{
    const StarShape s = g.star_shape();
    const double r = s.L_I / (c * g.T());
    return std::max({static_cast<double>(d) - 1.0, 1.0 + r, (theta + 1.0 / (theta * s.delta_I)) * r});
}

/// Coercivity constant of b, or of b_star when `mixed`.
inline double coercivity_constant(const FormulationParams& p, const Geometry& g, bool mixed)
{
    const StarShape s = g.star_shape();
    double a = std::min({p.xi * s.delta_I / 4.0, p.A_Q, p.A_O0});
    if (mixed) a = std::min(a, p.xi * s.delta_D / 2.0);
    return a;
}

struct ContinuityConstants {
    double C_b = 0.0;
    double C_F = 0.0;
    double C_b_star = 0.0; ///< zero when the geometry has no Dirichlet end
    double C_F_star = 0.0;
};

inline ContinuityConstants continuity_constants(const FormulationParams& p, const Geometry& g)
{
    const StarShape s = g.star_shape();
    const double T = g.T();
    const double cT = p.c * T;
    const double rI = s.L_I / cT;
    const double d = static_cast<double>(p.d);
    const double b = p.beta, xi = p.xi, nu = p.nu;
    ContinuityConstants k;
    k.C_b = std::sqrt(3.0) * std::max({b + xi * d + b * nu,
                                       xi * rI + b + 2.0 * xi - d * xi,
                                       b * (nu - 1.0) + xi * rI,
                                       (1.0 / p.theta + 1.0) * (b * nu / rI + xi),
                                       2.0 * xi,
                                       p.A_Q,
                                       p.A_O0});
    k.C_F = std::max({xi * rI + b * nu + p.A_Q, xi + b * nu / rI, p.A_O0, std::sqrt(2.0) * (b * nu + xi * rI)});
    if (g.has_dirichlet()) {
        const double rD = cT / s.L_D;
        k.C_b_star = std::max({k.C_b, std::sqrt(3.0) * (b * (nu - 1.0) * rD + xi), std::sqrt(3.0) * p.A_SD});
        k.C_F_star = std::max({k.C_F, xi + p.A_SD, 2.0 * xi, b * (nu - 1.0) * rD});
    }
    return k;
}

/// Quasi-optimality constant for xi = 1, nu = 2.
inline double quasi_optimality_constant(const FormulationParams& p, const Geometry& g)
{
    const StarShape s = g.star_shape();
    const double d = static_cast<double>(p.d);
    const double q = p.c * g.T() / s.L_I;
    return std::sqrt(3.0) * std::max({1.0 / p.A_Q, 1.0 / p.A_O0, 4.0 / s.delta_I}) *
           std::max({p.A_Q, p.A_O0, 3.0 * p.beta + d, (1.0 + 1.0 / p.theta) * (1.0 + 2.0 * p.beta * q)});
}

/// e * max{1/(2T), (c/L_I)(theta + 1/theta)}: E(t; v) is bounded by this times |v|_V^2.
inline double energy_bound_constant(const Geometry& g, double c, double theta)
{
    return std::exp(1.0) * std::max(1.0 / (2.0 * g.T()), (c / g.star_shape().L_I) * (theta + 1.0 / theta));
}

/// Formulation parameters with the problem's physical constants and beta = beta#.
inline FormulationParams reference_params(const ProblemSpec& prob, double A_Q = 1e-2, double A_O0 = 1.0)
{
    FormulationParams p;
    p.xi = 1.0;
    p.nu = 2.0;
    p.c = prob.c;
    p.theta = prob.theta;
    p.beta = beta_sharp(prob.geometry, prob.c, prob.theta, p.d);
    p.A_Q = A_Q;
    p.A_O0 = A_O0;
    p.A_SD = 1.0;
    return p;
}

// ---------------------------------------------------------------------------------------------
// Galerkin solve

struct GalerkinSystem {
    BandedMatrix B;
    Vector F;
};

/// Galerkin matrix and load, with the Dirichlet-end terms on mixed geometries.
inline GalerkinSystem assemble_system(const ProblemSpec& prob, const Mesh& m, const FormulationParams& p,
                                      const AssemblyOptions& opt = {})
{
    if (m.geometry().has_dirichlet()) {
        return {assemble_b_star(m, p, opt), assemble_F_star(m, p, prob, opt)};
    }
    return {assemble_b(m, p, opt), assemble_F(m, p, prob, opt)};
}

struct GalerkinSolution {
    DiscreteField field;
    BandedMatrix B;
    LUFactors factors;
};

/**
 * Assembles and solves b(u_h, v_h) = F(v_h). Throws ConfigError when the parameters fail
 * validation unless `allow_noncoercive`, and SingularMatrixError when the system is singular.
 */
inline GalerkinSolution solve_galerkin_full(const ProblemSpec& prob, const Mesh& m, const FormulationParams& p,
                                            const AssemblyOptions& opt = {}, bool allow_noncoercive = false)
{
    if (!allow_noncoercive) {
        const ValidationReport rep = validate_params(p, m.geometry());
        if (!rep.coercive()) {
            std::string msg = "parameters fail the coercivity conditions:";
            for (const auto& s : rep.messages) msg += " " + s + ";";
            throw ConfigError(msg);
        }
    }
    GalerkinSystem sys = assemble_system(prob, m, p, opt);
    LUFactors f = lu_factor(sys.B);
    Vector x = solve(f, sys.F);
    return {DiscreteField(m, std::move(x)), std::move(sys.B), std::move(f)};
}

inline DiscreteField solve_galerkin(const ProblemSpec& prob, const Mesh& m, const FormulationParams& p,
                                    const AssemblyOptions& opt = {}, bool allow_noncoercive = false)
{
    return solve_galerkin_full(prob, m, p, opt, allow_noncoercive).field;
}

// ---------------------------------------------------------------------------------------------
// Errors and best approximation

struct ErrorValue {
    double abs = 0.0;
    double rel = 0.0;
};

using ErrorReport = std::map<NormKind, ErrorValue>;

inline constexpr int error_quad_default = 12;

/**
 * Norms of u_h - u for the requested kinds, with the exact wave operator replaced by f.
 * Kinked exact solutions use split rules.
 */
inline ErrorReport error_norms(const DiscreteField& uh, const ProblemSpec& prob, const std::vector<NormKind>& kinds,
                               int quad = error_quad_default)
{
    const ExactSolution& ex = prob.require_exact();
    const Mesh& m = uh.mesh();
    ErrorReport out;
    for (NormKind kind : kinds) {
        const NormContext ctx(kind, m.geometry(), prob.c);
        double err2 = 0.0;
        double ref2 = 0.0;
        for (Region r : all_regions) {
            if (!ctx.active(r)) continue;
            for (const auto& [it, jx] : region_cells(m, r)) {
                for (const CellPoint& q : region_rule(m, r, it, jx, quad, ex.kink)) {
                    const auto [x, t] = physical_point(m, it, jx, q.sx, q.st);
                    const Jet2 Uh = uh.cell_jet(it, jx, q.sx, q.st);
                    const Jet2 U = ex.jet(x, t);
                    const double WU = r == Region::volume ? prob.f(x, t) : 0.0;
                    const NormFeatures a = ctx.features(r, Uh, waveop(Uh, prob.c));
                    const NormFeatures b = ctx.features(r, U, WU);
                    for (int k = 0; k < a.n; ++k) {
                        const double dk = a.f[k] - b.f[k];
                        err2 += q.w * dk * dk;
                        ref2 += q.w * b.f[k] * b.f[k];
                    }
                }
            }
        }
        ErrorValue v;
        v.abs = std::sqrt(err2);
        v.rel = ref2 > 0.0 ? v.abs / std::sqrt(ref2) : v.abs;
        out[kind] = v;
    }
    return out;
}

/// Norm of a discrete field through its Gram matrix.
inline double field_norm(const SymBandMatrix& G, const DiscreteField& v) { return std::sqrt(G.quadratic(v.coeffs())); }

struct BestApproximation {
    DiscreteField field;
    ErrorValue error;
};

/// Orthogonal projection of the exact solution onto the BFS space in the given norm.
inline BestApproximation best_approximation(const ProblemSpec& prob, const Mesh& m, NormKind kind,
                                            const AssemblyOptions& opt = {}, int quad = error_quad_default)
{
    const ExactSolution& ex = prob.require_exact();
    FormulationParams p;
    p.c = prob.c;
    p.theta = prob.theta;
    const SymBandMatrix G = assemble_gram(m, kind, p, opt);
    const NormContext ctx(kind, m.geometry(), prob.c);
    Vector rhs(m.num_dofs(), 0.0);
    for (Region r : all_regions) {
        if (!ctx.active(r)) continue;
        const auto cells = region_cells(m, r);
        std::vector<std::array<double, 16>> locals(cells.size());
        parallel_for(cells.size(), opt.jobs, [&](std::size_t c) {
            const auto [it, jx] = cells[c];
            auto& loc = locals[c];
            loc.fill(0.0);
            for (const CellPoint& q : region_rule(m, r, it, jx, quad, ex.kink)) {
                const auto [x, t] = physical_point(m, it, jx, q.sx, q.st);
                const auto J = shape_jets(q.sx, q.st, m.hx(), m.ht());
                const Jet2 U = ex.jet(x, t);
                const NormFeatures b = ctx.features(r, U, r == Region::volume ? prob.f(x, t) : 0.0);
                for (int a = 0; a < 16; ++a) {
                    const NormFeatures fa = ctx.features(r, J[a], waveop(J[a], prob.c));
                    double s = 0.0;
                    for (int k = 0; k < fa.n; ++k) s += fa.f[k] * b.f[k];
                    loc[a] += q.w * s;
                }
            }
        });
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto dofs = m.dofs().cell_dofs(cells[c].first, cells[c].second);
            for (int a = 0; a < 16; ++a) rhs[dofs[a]] += locals[c][a];
        }
    }
    const CholeskyFactor L = cholesky_factor(G);
    DiscreteField v(m, cholesky_solve(L, std::move(rhs)));
    const ErrorValue e = error_norms(v, prob, {kind}, quad).at(kind);
    return {std::move(v), e};
}

// ---------------------------------------------------------------------------------------------
// Energy

/// E(t) = 1/2 (|u_t|^2 + c^2 |u_x|^2) over the space interval, for a discrete field.
inline double energy(const DiscreteField& u, double t, double c, int n_quad = 6)
{
    const Mesh& m = u.mesh();
    const double ht = m.ht();
    std::size_t it = static_cast<std::size_t>(std::clamp(std::floor(t / ht), 0.0, static_cast<double>(m.nt() - 1)));
    const double st = t / ht - static_cast<double>(it);
    double s = 0.0;
    for (std::size_t jx = 0; jx < m.nx(); ++jx) {
        for (const auto& q : segment_rule(n_quad, m.hx())) {
            const Jet2 J = u.cell_jet(it, jx, q.x, st);
            s += q.w * (J.v_t * J.v_t + c * c * J.v_x * J.v_x);
        }
    }
    return 0.5 * s;
}

/// Energy of an exact solution by composite Gauss quadrature with `panels` panels.
inline double energy(const JetFn& u, const Geometry& g, double t, double c, int n_quad = 12, int panels = 128)
{
    const double h = g.length() / panels;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
        for (const auto& q : segment_rule(n_quad, h)) {
            const Jet2 J = u(g.x_lo() + (k + q.x) * h, t);
            s += q.w * (J.v_t * J.v_t + c * c * J.v_x * J.v_x);
        }
    }
    return 0.5 * s;
}

// ---------------------------------------------------------------------------------------------
// Quasi-optimality and weak residual

struct QuasiOptimality {
    double ratio = 0.0;        ///< Galerkin error / best-approximation error
    double galerkin_error = 0.0;
    double best_error = 0.0;
    double bound = 0.0;        ///< C_b / alpha_b
};

inline QuasiOptimality quasi_optimality_ratio(const ProblemSpec& prob, const Mesh& m, const FormulationParams& p,
                                              NormKind kind, const AssemblyOptions& opt = {})
{
    const DiscreteField uh = solve_galerkin(prob, m, p, opt, true);
    QuasiOptimality q;
    q.galerkin_error = error_norms(uh, prob, {kind}).at(kind).abs;
    q.best_error = best_approximation(prob, m, kind, opt).error.abs;
    q.ratio = q.galerkin_error / q.best_error;
    const bool mixed = m.geometry().has_dirichlet();
    const ContinuityConstants k = continuity_constants(p, m.geometry());
    q.bound = (mixed ? k.C_b_star : k.C_b) / coercivity_constant(p, m.geometry(), mixed);
    return q;
}

/// Terms of the generalised-solution residual for one test function.
struct WeakResidualTerms {
    double volume = 0.0;    ///< integral of -u_t v_t + c^2 u_x v_x
    double impedance = 0.0; ///< (c/theta) integral of u_t v over Sigma_I
    double source = 0.0;    ///< integral of f v
    double boundary = 0.0;  ///< c^2 integral of g_I v over Sigma_I
    double initial = 0.0;   ///< integral of u_1 v at t = 0

    [[nodiscard]] double residual() const noexcept { return volume + impedance - source - boundary - initial; }
    [[nodiscard]] double scale() const noexcept
    {
        return std::abs(volume) + std::abs(impedance) + std::abs(source) + std::abs(boundary) + std::abs(initial);
    }
};

inline WeakResidualTerms weak_residual_terms(const DiscreteField& uh, const DiscreteField& v, const ProblemSpec& prob,
                                             int quad = 6)
{
    const Mesh& m = uh.mesh();
    const Geometry& g = m.geometry();
    const double c2 = prob.c * prob.c;
    WeakResidualTerms w;
    w.volume = integrate_region(m, Region::volume, quad, std::nullopt,
                                [&](std::size_t it, std::size_t jx, double sx, double st, double, double) {
                                    const Jet2 U = uh.cell_jet(it, jx, sx, st);
                                    const Jet2 V = v.cell_jet(it, jx, sx, st);
                                    return -U.v_t * V.v_t + c2 * U.v_x * V.v_x;
                                });
    w.source = integrate_region(m, Region::volume, quad, std::nullopt,
                                [&](std::size_t it, std::size_t jx, double sx, double st, double x, double t) {
                                    return prob.f(x, t) * v.cell_jet(it, jx, sx, st).v;
                                });
    for (End e : {End::lo, End::hi}) {
        if (!g.is_impedance(e)) continue;
        const Region r = e == End::lo ? Region::lo : Region::hi;
        const Fn1& gi = prob.g_impedance(e);
        w.impedance += (prob.c / prob.theta) *
                       integrate_region(m, r, quad, std::nullopt,
                                        [&](std::size_t it, std::size_t jx, double sx, double st, double, double) {
                                            return uh.cell_jet(it, jx, sx, st).v_t * v.cell_jet(it, jx, sx, st).v;
                                        });
        w.boundary += c2 * integrate_region(m, r, quad, std::nullopt,
                                            [&](std::size_t it, std::size_t jx, double sx, double st, double, double t) {
                                                return gi(t) * v.cell_jet(it, jx, sx, st).v;
                                            });
    }
    w.initial = integrate_region(m, Region::bottom, quad, std::nullopt,
                                 [&](std::size_t it, std::size_t jx, double sx, double st, double x, double) {
                                     return prob.u1(x) * v.cell_jet(it, jx, sx, st).v;
                                 });
    return w;
}

/// Random discrete test function vanishing at t = T (value and x-derivative DOFs of the last time row zeroed).
inline DiscreteField random_test_function(const Mesh& m, std::mt19937_64& rng)
{
    DiscreteField v = random_field(m, rng);
    const DofMap& dm = m.dofs();
    for (std::size_t j = 0; j <= m.nx(); ++j) {
        v.coeffs()[dm.index(m.nt(), j, DofKind::val)] = 0.0;
        v.coeffs()[dm.index(m.nt(), j, DofKind::dx)] = 0.0;
    }
    return v;
}

/**
 * Max over n_test random test functions of |residual| / (sum of term magnitudes) of the
 * generalised-solution equation; 0 when every term vanishes.
 */
inline double weak_residual(const DiscreteField& uh, const ProblemSpec& prob, int n_test, std::uint64_t seed = 7)
{
    if (uh.mesh().geometry().has_dirichlet()) {
        throw ConfigError("weak_residual: only impedance problems are supported");
    }
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int k = 0; k < n_test; ++k) {
        const DiscreteField v = random_test_function(uh.mesh(), rng);
        const WeakResidualTerms w = weak_residual_terms(uh, v, prob);
        const double s = w.scale();
        if (s > 0.0) worst = std::max(worst, std::abs(w.residual()) / s);
    }
    return worst;
}

// ---------------------------------------------------------------------------------------------
// Study helpers

/// Least-squares slope of log(y) against log(x) over the last `last` points (all when 0).
inline double fit_order(const std::vector<double>& x, const std::vector<double>& y, std::size_t last = 4)
{
    const std::size_t n = x.size();
    const std::size_t k = (last == 0 || last > n) ? n : last;
    if (k < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = n - k; i < n; ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double kk = static_cast<double>(k);
    return (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
}

} // namespace morawetz
