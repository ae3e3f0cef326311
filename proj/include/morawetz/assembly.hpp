#pragma once

#include "morawetz/basis.hpp"
#include "morawetz/errors.hpp"
#include "morawetz/field.hpp"
#include "morawetz/geometry.hpp"
#include "morawetz/linalg.hpp"
#include "morawetz/operators.hpp"
#include "morawetz/parallel.hpp"
#include "morawetz/problems.hpp"
#include "morawetz/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace morawetz {

/// Parts of the boundary of the cylinder plus its interior.
enum class Region { volume, top, bottom, lo, hi };

inline constexpr std::array<Region, 5> all_regions = {Region::volume, Region::top, Region::bottom, Region::lo, Region::hi};

inline End region_end(Region r) noexcept { return r == Region::lo ? End::lo : End::hi; }

struct AssemblyOptions {
    int quad = 6;      ///< Gauss points per direction
    unsigned jobs = 1; ///< worker threads for the element loop, 0 = hardware
};

/// Cells (it, jx) touching a region.
inline std::vector<std::pair<std::size_t, std::size_t>> region_cells(const Mesh& m, Region r)
{
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    switch (r) {
    case Region::volume:
        cells.reserve(m.num_cells());
        for (std::size_t it = 0; it < m.nt(); ++it)
            for (std::size_t jx = 0; jx < m.nx(); ++jx) cells.emplace_back(it, jx);
        break;
    case Region::top:
        for (std::size_t jx = 0; jx < m.nx(); ++jx) cells.emplace_back(m.nt() - 1, jx);
        break;
    case Region::bottom:
        for (std::size_t jx = 0; jx < m.nx(); ++jx) cells.emplace_back(0, jx);
        break;
    case Region::lo:
        for (std::size_t it = 0; it < m.nt(); ++it) cells.emplace_back(it, 0);
        break;
    case Region::hi:
        for (std::size_t it = 0; it < m.nt(); ++it) cells.emplace_back(it, m.nx() - 1);
        break;
    }
    return cells;
}

/**
 * Quadrature points of a region restricted to one cell, reference coordinates and physical weights.
 * A kink line splits volume cells into polygons and boundary edges at the crossing point.
 */
inline CellRule region_rule(const Mesh& m, Region r, std::size_t it, std::size_t jx, int n,
                            const std::optional<KinkLine>& kink = std::nullopt)
{
    const double hx = m.hx();
    const double ht = m.ht();
    const double xl = m.x_node(jx);
    const double tb = m.t_node(it);
    CellRule out;
    if (r == Region::volume) {
        return kink ? split_rule(xl, tb, hx, ht, *kink, n) : element_rule(n, n, hx, ht);
    }
    if (r == Region::top || r == Region::bottom) {
        const double st = r == Region::top ? 1.0 : 0.0;
        std::optional<double> cut;
        if (kink) {
            const double t = r == Region::top ? m.geometry().T() : 0.0;
            cut = (kink->c * t - kink->x0 - xl) / hx;
        }
        for (const auto& q : segment_rule(n, hx, cut)) out.push_back({q.x, st, q.w});
        return out;
    }
    const double sx = r == Region::lo ? 0.0 : 1.0;
    std::optional<double> cut;
    if (kink) {
        const double x = m.geometry().coordinate(region_end(r));
        cut = ((x + kink->x0) / kink->c - tb) / ht;
    }
    for (const auto& q : segment_rule(n, ht, cut)) out.push_back({sx, q.x, q.w});
    return out;
}

/// Physical coordinates of a reference point of cell (it, jx).
inline std::pair<double, double> physical_point(const Mesh& m, std::size_t it, std::size_t jx, double sx, double st)
{
    return {m.x_node(jx) + sx * m.hx(), m.t_node(it) + st * m.ht()};
}

using LocalMatrix = std::array<double, 256>;

/**
 * Element matrices of a bilinear kernel K(u, v, x, t) on a region: loc[16 * a + b] = K(phi_b, phi_a),
 * so rows index the test function.
 */
template <class Kernel>
std::vector<LocalMatrix> local_matrices(const Mesh& m, Region r, const Kernel& K, const AssemblyOptions& opt,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& cells)
{
    std::vector<LocalMatrix> locals(cells.size());
    parallel_for(cells.size(), opt.jobs, [&](std::size_t c) {
        const auto [it, jx] = cells[c];
        LocalMatrix& loc = locals[c];
        loc.fill(0.0);
        for (const CellPoint& q : region_rule(m, r, it, jx, opt.quad)) {
            const auto J = shape_jets(q.sx, q.st, m.hx(), m.ht());
            const auto [x, t] = physical_point(m, it, jx, q.sx, q.st);
            for (int a = 0; a < 16; ++a)
                for (int b = 0; b < 16; ++b) loc[16 * a + b] += q.w * K(J[b], J[a], x, t);
        }
    });
    return locals;
}

/// Adds a bilinear kernel over a region into a general band matrix.
template <class Kernel>
void add_bilinear(BandedMatrix& A, const Mesh& m, Region r, const Kernel& K, const AssemblyOptions& opt)
{
    const auto cells = region_cells(m, r);
    const auto locals = local_matrices(m, r, K, opt, cells);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto dofs = m.dofs().cell_dofs(cells[c].first, cells[c].second);
        for (int a = 0; a < 16; ++a)
            for (int b = 0; b < 16; ++b) A(dofs[a], dofs[b]) += locals[c][16 * a + b];
    }
}

/// Adds a symmetric bilinear kernel over a region into the lower triangle of a symmetric band matrix.
template <class Kernel>
void add_bilinear(SymBandMatrix& A, const Mesh& m, Region r, const Kernel& K, const AssemblyOptions& opt)
{
    const auto cells = region_cells(m, r);
    const auto locals = local_matrices(m, r, K, opt, cells);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto dofs = m.dofs().cell_dofs(cells[c].first, cells[c].second);
        for (int a = 0; a < 16; ++a)
            for (int b = 0; b < 16; ++b)
                if (dofs[a] >= dofs[b]) A.lower(dofs[a], dofs[b]) += locals[c][16 * a + b];
    }
}

/// Adds a linear kernel L(v, x, t) over a region into a load vector.
template <class Kernel>
void add_linear(Vector& F, const Mesh& m, Region r, const Kernel& L, const AssemblyOptions& opt,
                const std::optional<KinkLine>& kink = std::nullopt)
{
    const auto cells = region_cells(m, r);
    std::vector<std::array<double, 16>> locals(cells.size());
    parallel_for(cells.size(), opt.jobs, [&](std::size_t c) {
        const auto [it, jx] = cells[c];
        auto& loc = locals[c];
        loc.fill(0.0);
        for (const CellPoint& q : region_rule(m, r, it, jx, opt.quad, kink)) {
            const auto J = shape_jets(q.sx, q.st, m.hx(), m.ht());
            const auto [x, t] = physical_point(m, it, jx, q.sx, q.st);
            for (int a = 0; a < 16; ++a) loc[a] += q.w * L(J[a], x, t);
        }
    });
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto dofs = m.dofs().cell_dofs(cells[c].first, cells[c].second);
        for (int a = 0; a < 16; ++a) F[dofs[a]] += locals[c][a];
    }
}

/// Integral over a region of g(uh jets..., x, t) for fields evaluated at each quadrature point.
template <class Fn>
double integrate_region(const Mesh& m, Region r, int n, const std::optional<KinkLine>& kink, const Fn& g)
{
    double s = 0.0;
    for (const auto& [it, jx] : region_cells(m, r)) {
        for (const CellPoint& q : region_rule(m, r, it, jx, n, kink)) {
            const auto [x, t] = physical_point(m, it, jx, q.sx, q.st);
            s += q.w * g(it, jx, q.sx, q.st, x, t);
        }
    }
    return s;
}

namespace detail {

inline BandedMatrix empty_galerkin(const Mesh& m)
{
    const std::size_t bw = m.dofs().bandwidth();
    return BandedMatrix(m.num_dofs(), bw, bw);
}

inline void check_problem_params(const FormulationParams& p, const ProblemSpec& prob)
{
    if (p.c != prob.c || p.theta != prob.theta) {
        throw ConfigError("formulation parameters c/theta differ from the problem's physical constants");
    }
}

/// Impedance and least-squares parts of b shared by b and b_star.
inline void assemble_b_into(BandedMatrix& B, const Mesh& m, const FormulationParams& p, const AssemblyOptions& opt)
{
    const Geometry& g = m.geometry();
    const double T = g.T();
    const double c2 = p.c * p.c;
    const double d = static_cast<double>(p.d);
    const double a_t = p.beta + p.xi * d;
    const double a_x = c2 * (p.beta + 2.0 * p.xi - d * p.xi);
    const double AQT2 = p.A_Q * T * T;

    add_bilinear(B, m, Region::volume,
                 [&](const Jet2& u, const Jet2& v, double x, double t) {
                     const double Wv = waveop(v, p.c);
                     return morawetz(u, x, t, p, T) * Wv + a_t * u.v_t * v.v_t + a_x * u.v_x * v.v_x +
                            AQT2 * waveop(u, p.c) * Wv;
                 },
                 opt);

    const double top_w = -p.beta * (T - p.nu * T);
    add_bilinear(B, m, Region::top,
                 [&](const Jet2& u, const Jet2& v, double x, double) {
                     return p.xi * x * (u.v_t * v.v_x + u.v_x * v.v_t) + top_w * (u.v_t * v.v_t + c2 * u.v_x * v.v_x);
                 },
                 opt);

    const double a0 = p.A_O0 / T;
    if (a0 != 0.0) {
        add_bilinear(B, m, Region::bottom,
                     [&](const Jet2& u, const Jet2& v, double, double) { return a0 * u.v * v.v; }, opt);
    }

    for (End e : {End::lo, End::hi}) {
        if (!g.is_impedance(e)) continue;
        const double n = Geometry::normal(e);
        const double xn = g.x_dot_n(e);
        add_bilinear(B, m, e == End::lo ? Region::lo : Region::hi,
                     [&, n, xn](const Jet2& u, const Jet2& v, double x, double t) {
                         return c2 * morawetz(u, x, t, p, T) * n * v.v_x -
                                (p.c / p.theta) * u.v_t * morawetz(v, x, t, p, T) +
                                p.xi * xn * (-u.v_t * v.v_t + c2 * u.v_x * v.v_x);
                     },
                     opt);
    }
}

inline void assemble_F_into(Vector& F, const Mesh& m, const FormulationParams& p, const ProblemSpec& prob,
                            const AssemblyOptions& opt)
{
    const Geometry& g = m.geometry();
    const double T = g.T();
    const double c2 = p.c * p.c;
    const double AQT2 = p.A_Q * T * T;
    const double Tstar = p.nu * T;

    add_linear(F, m, Region::volume,
               [&](const Jet2& v, double x, double t) {
                   const double f = prob.f(x, t);
                   if (f == 0.0) return 0.0;
                   return -f * morawetz(v, x, t, p, T) + AQT2 * f * waveop(v, p.c);
               },
               opt);

    const double a0 = p.A_O0 / T;
    add_linear(F, m, Region::bottom,
               [&](const Jet2& v, double x, double) {
                   const double u1 = prob.u1(x);
                   const double u0x = prob.u0_x(x);
                   const double u0 = prob.u0(x);
                   return p.xi * x * (u1 * v.v_x + u0x * v.v_t) + p.beta * Tstar * (u1 * v.v_t + c2 * u0x * v.v_x) +
                          a0 * u0 * v.v;
               },
               opt);

    for (End e : {End::lo, End::hi}) {
        if (!g.is_impedance(e)) continue;
        const Fn1& gi = prob.g_impedance(e);
        add_linear(F, m, e == End::lo ? Region::lo : Region::hi,
                   [&](const Jet2& v, double x, double t) {
                       const double gv = gi(t);
                       if (gv == 0.0) return 0.0;
                       return -c2 * gv * morawetz(v, x, t, p, T);
                   },
                   opt);
    }
}

} // namespace detail

/// Galerkin matrix of b: B(i, j) = b(phi_j, phi_i).
inline BandedMatrix assemble_b(const Mesh& m, const FormulationParams& p, const AssemblyOptions& opt = {})
{
    p.check();
    BandedMatrix B = detail::empty_galerkin(m);
    detail::assemble_b_into(B, m, p, opt);
    return B;
}

/// Load vector F(phi_i).
inline Vector assemble_F(const Mesh& m, const FormulationParams& p, const ProblemSpec& prob,
                         const AssemblyOptions& opt = {})
{
    p.check();
    detail::check_problem_params(p, prob);
    Vector F(m.num_dofs(), 0.0);
    detail::assemble_F_into(F, m, p, prob, opt);
    return F;
}

/// Galerkin matrix of b_star = b + Dirichlet-end terms.
inline BandedMatrix assemble_b_star(const Mesh& m, const FormulationParams& p, const AssemblyOptions& opt = {})
{
    p.check();
    const Geometry& g = m.geometry();
    if (!g.has_dirichlet()) throw ConfigError("assemble_b_star: geometry has no Dirichlet end");
    BandedMatrix B = detail::empty_galerkin(m);
    detail::assemble_b_into(B, m, p, opt);
    const double T = g.T();
    const double c2 = p.c * p.c;
    const double n = Geometry::normal(End::lo);
    const double w = p.A_SD * g.star_shape().L_D;
    add_bilinear(B, m, Region::lo,
                 [&](const Jet2& u, const Jet2& v, double x, double t) {
                     return c2 * n * u.v_x * morawetz(v, x, t, p, T) + w * u.v_t * v.v_t;
                 },
                 opt);
    return B;
}

/// Load vector of the mixed problem.
inline Vector assemble_F_star(const Mesh& m, const FormulationParams& p, const ProblemSpec& prob,
                              const AssemblyOptions& opt = {})
{
    p.check();
    detail::check_problem_params(p, prob);
    const Geometry& g = m.geometry();
    if (!g.has_dirichlet()) throw ConfigError("assemble_F_star: geometry has no Dirichlet end");
    Vector F(m.num_dofs(), 0.0);
    detail::assemble_F_into(F, m, p, prob, opt);
    const double T = g.T();
    const double c2 = p.c * p.c;
    const double n = Geometry::normal(End::lo);
    const double xn = g.x_dot_n(End::lo);
    const double w = p.A_SD * g.star_shape().L_D;
    const double Tstar = p.nu * T;
    add_linear(F, m, Region::lo,
               [&](const Jet2& v, double, double t) {
                   const double gd = prob.g_D_t(t);
                   if (gd == 0.0) return 0.0;
                   return -c2 * p.beta * (t - Tstar) * gd * n * v.v_x + p.xi * xn * gd * v.v_t + w * gd * v.v_t;
               },
               opt);
    return F;
}

/// Norms used for errors and Gram matrices.
enum class NormKind { L2, H1scaled, V, Vstar };

inline std::string to_string(NormKind k)
{
    switch (k) {
    case NormKind::L2: return "L2";
    case NormKind::H1scaled: return "H1scaled";
    case NormKind::V: return "V";
    case NormKind::Vstar: return "Vstar";
    }
    return "?";
}

/**
 * Square-root-weighted features of a norm: (v, w)_X is the sum over regions of the integral of
 * the dot product of the features of v and w. `W` is the wave operator value to use.
 */
struct NormFeatures {
    std::array<double, 4> f{};
    int n = 0;
};

struct NormContext {
    NormKind kind = NormKind::V;
    double c = 1.0;
    double T = 1.0;
    double sqrtT = 1.0;
    double sqrtLI = 1.0;
    double sqrtLD = 0.0;
    bool lo_impedance = true;
    bool hi_impedance = true;

    NormContext(NormKind k, const Geometry& g, double c_) : kind(k), c(c_), T(g.T())
    {
        const StarShape s = g.star_shape();
        sqrtT = std::sqrt(T);
        sqrtLI = std::sqrt(s.L_I);
        sqrtLD = std::sqrt(s.L_D);
        lo_impedance = g.is_impedance(End::lo);
        hi_impedance = g.is_impedance(End::hi);
    }

    /// Whether the norm has any term on a region.
    [[nodiscard]] bool active(Region r) const noexcept
    {
        if (kind == NormKind::L2 || kind == NormKind::H1scaled) return r == Region::volume;
        if (r == Region::lo && !lo_impedance) return kind == NormKind::Vstar;
        if (r == Region::hi && !hi_impedance) return kind == NormKind::Vstar;
        return true;
    }

    [[nodiscard]] NormFeatures features(Region r, const Jet2& j, double W) const noexcept
    {
        NormFeatures F;
        switch (kind) {
        case NormKind::L2:
            F.f[0] = j.v;
            F.n = 1;
            return F;
        case NormKind::H1scaled:
            F.f = {j.v / T, j.v_t, c * j.v_x, 0.0};
            F.n = 3;
            return F;
        case NormKind::V:
        case NormKind::Vstar:
            break;
        }
        switch (r) {
        case Region::volume:
            F.f = {j.v_t, c * j.v_x, T * W, 0.0};
            F.n = 3;
            break;
        case Region::top:
            F.f = {sqrtT * j.v_t, sqrtT * c * j.v_x, 0.0, 0.0};
            F.n = 2;
            break;
        case Region::bottom:
            F.f = {sqrtT * j.v_t, sqrtT * c * j.v_x, j.v / sqrtT, 0.0};
            F.n = 3;
            break;
        case Region::lo:
        case Region::hi: {
            const bool imp = r == Region::lo ? lo_impedance : hi_impedance;
            const double s = imp ? sqrtLI : sqrtLD;
            F.f = {s * j.v_t, s * c * j.v_x, 0.0, 0.0};
            F.n = 2;
            break;
        }
        }
        return F;
    }
};

/// Gram matrix of a norm on the BFS space.
inline SymBandMatrix assemble_gram(const Mesh& m, NormKind kind, const FormulationParams& p,
                                   const AssemblyOptions& opt = {})
{
    const Geometry& g = m.geometry();
    if (kind == NormKind::Vstar && !g.has_dirichlet()) {
        throw ConfigError("assemble_gram: Vstar norm needs a Dirichlet end");
    }
    const NormContext ctx(kind, g, p.c);
    SymBandMatrix G(m.num_dofs(), m.dofs().bandwidth());
    for (Region r : all_regions) {
        if (!ctx.active(r)) continue;
        add_bilinear(G, m, r,
                     [&](const Jet2& u, const Jet2& v, double, double) {
                         const NormFeatures a = ctx.features(r, u, waveop(u, p.c));
                         const NormFeatures b = ctx.features(r, v, waveop(v, p.c));
                         double s = 0.0;
                         for (int k = 0; k < a.n; ++k) s += a.f[k] * b.f[k];
                         return s;
                     },
                     opt);
    }
    return G;
}

/// Natural energy norm of the formulation on a geometry: V, or Vstar when mixed.
inline NormKind natural_norm(const Geometry& g) noexcept { return g.has_dirichlet() ? NormKind::Vstar : NormKind::V; }

} // namespace morawetz
