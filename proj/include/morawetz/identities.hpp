#pragma once

#include "morawetz/assembly.hpp"
#include "morawetz/field.hpp"
#include "morawetz/operators.hpp"

#include <cmath>

namespace morawetz {

/// Both sides of the integrated Morawetz identity for a pair of discrete fields.
struct IntegratedIdentity {
    double m_volume = 0.0; ///< integral of Mu Wv + Wu Mv over Q
    double q_term = 0.0;   ///< first-derivative volume term
    double top_term = 0.0;
    double bottom_term = 0.0;
    double sigma_term = 0.0; ///< lateral boundary, both endpoints

    [[nodiscard]] double rhs() const noexcept { return q_term + top_term + bottom_term + sigma_term; }
    [[nodiscard]] double gap() const noexcept { return std::abs(m_volume - rhs()); }
    [[nodiscard]] double scale() const noexcept
    {
        return std::abs(m_volume) + std::abs(q_term) + std::abs(top_term) + std::abs(bottom_term) +
               std::abs(sigma_term);
    }
    [[nodiscard]] double relative_gap() const noexcept
    {
        const double s = scale();
        return s > 0.0 ? gap() / s : gap();
    }
};

/**
 * Evaluates m(u, v) by element quadrature and the right side of the integrated identity
 * (volume first-derivative term plus top, bottom and lateral boundary terms).
 */
inline IntegratedIdentity integrated_identity(const DiscreteField& u, const DiscreteField& v,
                                              const FormulationParams& p, int quad = 6)
{
    const Mesh& m = u.mesh();
    const Geometry& g = m.geometry();
    const double T = g.T();
    const double Tstar = p.nu * T;
    const double c2 = p.c * p.c;
    const double d = static_cast<double>(p.d);
    IntegratedIdentity r;

    const auto jets = [&](std::size_t it, std::size_t jx, double sx, double st) {
        return std::pair{u.cell_jet(it, jx, sx, st), v.cell_jet(it, jx, sx, st)};
    };

    r.m_volume = integrate_region(m, Region::volume, quad, std::nullopt,
                                  [&](std::size_t it, std::size_t jx, double sx, double st, double x, double t) {
                                      const auto [U, V] = jets(it, jx, sx, st);
                                      return morawetz(U, x, t, p, T) * waveop(V, p.c) +
                                             waveop(U, p.c) * morawetz(V, x, t, p, T);
                                  });
    r.q_term = -integrate_region(m, Region::volume, quad, std::nullopt,
                                 [&](std::size_t it, std::size_t jx, double sx, double st, double, double) {
                                     const auto [U, V] = jets(it, jx, sx, st);
                                     return (p.beta + p.xi * d) * U.v_t * V.v_t +
                                            c2 * (p.beta + 2.0 * p.xi - d * p.xi) * U.v_x * V.v_x;
                                 });
    r.top_term = -integrate_region(m, Region::top, quad, std::nullopt,
                                   [&](std::size_t it, std::size_t jx, double sx, double st, double x, double) {
                                       const auto [U, V] = jets(it, jx, sx, st);
                                       return p.xi * x * (U.v_t * V.v_x + U.v_x * V.v_t) -
                                              p.beta * (T - Tstar) * (U.v_t * V.v_t + c2 * U.v_x * V.v_x);
                                   });
    r.bottom_term = integrate_region(m, Region::bottom, quad, std::nullopt,
                                     [&](std::size_t it, std::size_t jx, double sx, double st, double x, double) {
                                         const auto [U, V] = jets(it, jx, sx, st);
                                         return p.xi * x * (U.v_t * V.v_x + U.v_x * V.v_t) +
                                                p.beta * Tstar * (U.v_t * V.v_t + c2 * U.v_x * V.v_x);
                                     });
    for (End e : {End::lo, End::hi}) {
        const double n = Geometry::normal(e);
        const double xn = g.x_dot_n(e);
        r.sigma_term -= integrate_region(
            m, e == End::lo ? Region::lo : Region::hi, quad, std::nullopt,
            [&](std::size_t it, std::size_t jx, double sx, double st, double x, double t) {
                const auto [U, V] = jets(it, jx, sx, st);
                return c2 * morawetz(U, x, t, p, T) * n * V.v_x + c2 * n * U.v_x * morawetz(V, x, t, p, T) +
                       p.xi * xn * (-U.v_t * V.v_t + c2 * U.v_x * V.v_x);
            });
    }
    return r;
}

/// Absolute gap between the two sides of the integrated identity.
inline double integrated_identity_gap(const DiscreteField& u, const DiscreteField& v, const FormulationParams& p,
                                      int quad = 6)
{
    return integrated_identity(u, v, p, quad).gap();
}

} // namespace morawetz
