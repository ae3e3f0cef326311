#pragma once

#include "morawetz/errors.hpp"
#include "morawetz/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace morawetz {

/// Multiplier, penalty and physical parameters of the formulation.
struct FormulationParams {
    double xi = 1.0;    ///< radial multiplier weight
    double beta = 2.0;  ///< time multiplier weight
    double nu = 2.0;    ///< T* = nu T
    double A_Q = 1e-2;  ///< least-squares weight on the wave operator
    double A_O0 = 1.0;  ///< least-squares weight on the initial value
    double A_SD = 1.0;  ///< Dirichlet trace weight (mixed problems)
    double c = 1.0;     ///< wave speed
    double theta = 1.0; ///< impedance parameter
    int d = 1;          ///< space dimension used in the coefficients

    /// Throws ConfigError unless the structural positivity conditions hold.
    void check() const
    {
        if (!(xi > 0.0)) throw ConfigError("params: xi must be positive");
        if (!(beta > 0.0)) throw ConfigError("params: beta must be positive");
        if (!(c > 0.0)) throw ConfigError("params: c must be positive");
        if (!(theta > 0.0)) throw ConfigError("params: theta must be positive");
        if (!(A_Q >= 0.0)) throw ConfigError("params: A_Q must be nonnegative");
        if (!(A_O0 >= 0.0)) throw ConfigError("params: A_O0 must be nonnegative");
        if (!(A_SD >= 0.0)) throw ConfigError("params: A_SD must be nonnegative");
        if (d < 1) throw ConfigError("params: d must be at least 1");
    }
};

/// M v = -xi x v_x + beta (t - nu T) v_t.
[[nodiscard]] inline double morawetz(const Jet2& j, double x, double t, const FormulationParams& p, double T) noexcept
{
    return -p.xi * x * j.v_x + p.beta * (t - p.nu * T) * j.v_t;
}

/// W v = v_tt - c^2 v_xx.
[[nodiscard]] inline double waveop(const Jet2& j, double c) noexcept
{
    return j.v_tt - c * c * j.v_xx;
}

/**
 * Dense bivariate polynomial sum a[i][k] x^i t^k with exact differentiation.
 */
class Polynomial2 {
public:
    Polynomial2() = default;
    Polynomial2(std::size_t deg_x, std::size_t deg_t)
        : nx_(deg_x + 1), nt_(deg_t + 1), a_(nx_ * nt_, 0.0) {}

    static Polynomial2 constant(double v)
    {
        Polynomial2 p(0, 0);
        p.coef(0, 0) = v;
        return p;
    }
    static Polynomial2 monomial(std::size_t i, std::size_t k, double v = 1.0)
    {
        Polynomial2 p(i, k);
        p.coef(i, k) = v;
        return p;
    }

    [[nodiscard]] std::size_t deg_x() const noexcept { return nx_ == 0 ? 0 : nx_ - 1; }
    [[nodiscard]] std::size_t deg_t() const noexcept { return nt_ == 0 ? 0 : nt_ - 1; }

    double& coef(std::size_t i, std::size_t k) { return a_[i * nt_ + k]; }
    [[nodiscard]] double coef(std::size_t i, std::size_t k) const
    {
        return (i < nx_ && k < nt_) ? a_[i * nt_ + k] : 0.0;
    }

    [[nodiscard]] double operator()(double x, double t) const noexcept
    {
        double s = 0.0;
        for (std::size_t i = nx_; i-- > 0;) {
            double row = 0.0;
            for (std::size_t k = nt_; k-- > 0;) {
                row = row * t + a_[i * nt_ + k];
            }
            s = s * x + row;
        }
        return s;
    }

    [[nodiscard]] Polynomial2 dx() const
    {
        if (nx_ <= 1) return Polynomial2(0, 0);
        Polynomial2 r(nx_ - 2, nt_ - 1);
        for (std::size_t i = 1; i < nx_; ++i)
            for (std::size_t k = 0; k < nt_; ++k)
                r.coef(i - 1, k) = static_cast<double>(i) * coef(i, k);
        return r;
    }

    [[nodiscard]] Polynomial2 dt() const
    {
        if (nt_ <= 1) return Polynomial2(0, 0);
        Polynomial2 r(nx_ - 1, nt_ - 2);
        for (std::size_t i = 0; i < nx_; ++i)
            for (std::size_t k = 1; k < nt_; ++k)
                r.coef(i, k - 1) = static_cast<double>(k) * coef(i, k);
        return r;
    }

    [[nodiscard]] Jet2 jet(double x, double t) const
    {
        const Polynomial2 px = dx();
        const Polynomial2 pt = dt();
        return {(*this)(x, t), px(x, t), pt(x, t), px.dx()(x, t), pt.dt()(x, t), px.dt()(x, t)};
    }

    friend Polynomial2 operator+(const Polynomial2& a, const Polynomial2& b)
    {
        Polynomial2 r(std::max(a.deg_x(), b.deg_x()), std::max(a.deg_t(), b.deg_t()));
        for (std::size_t i = 0; i < r.nx_; ++i)
            for (std::size_t k = 0; k < r.nt_; ++k)
                r.coef(i, k) = a.coef(i, k) + b.coef(i, k);
        return r;
    }
    friend Polynomial2 operator*(double s, Polynomial2 a)
    {
        for (double& v : a.a_) v *= s;
        return a;
    }
    friend Polynomial2 operator-(const Polynomial2& a, const Polynomial2& b) { return a + (-1.0) * b; }
    friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b)
    {
        Polynomial2 r(a.deg_x() + b.deg_x(), a.deg_t() + b.deg_t());
        for (std::size_t i = 0; i < a.nx_; ++i)
            for (std::size_t k = 0; k < a.nt_; ++k) {
                const double ca = a.a_[i * a.nt_ + k];
                if (ca == 0.0) continue;
                for (std::size_t j = 0; j < b.nx_; ++j)
                    for (std::size_t l = 0; l < b.nt_; ++l)
                        r.coef(i + j, k + l) += ca * b.a_[j * b.nt_ + l];
            }
        return r;
    }

private:
    std::size_t nx_ = 1;
    std::size_t nt_ = 1;
    std::vector<double> a_ = std::vector<double>(1, 0.0);
};

/// Morawetz multiplier applied to a polynomial, as a polynomial.
[[nodiscard]] inline Polynomial2 morawetz(const Polynomial2& u, const FormulationParams& p, double T)
{
    const Polynomial2 x = Polynomial2::monomial(1, 0);
    const Polynomial2 tshift = Polynomial2::monomial(0, 1) - Polynomial2::constant(p.nu * T);
    return (-p.xi) * (x * u.dx()) + p.beta * (tshift * u.dt());
}

[[nodiscard]] inline Polynomial2 waveop(const Polynomial2& u, double c)
{
    return u.dt().dt() - (c * c) * u.dx().dx();
}

struct IdentityResidual {
    double residual = 0.0; ///< |lhs - rhs|
    double scale = 0.0;    ///< sum of magnitudes of the individual terms
    [[nodiscard]] double relative() const noexcept { return scale > 0.0 ? residual / scale : residual; }
};

/**
 * Pointwise Morawetz identity MuWv + WuMv = d/dt A - d/dx B - (beta + xi d) u_t v_t
 * - c^2 (beta + xi (2 - d)) u_x v_x, with A, B expanded on the polynomial ring.
 */
[[nodiscard]] inline IdentityResidual pointwise_identity_residual(const Polynomial2& u, const Polynomial2& v,
                                                                  double x, double t,
                                                                  const FormulationParams& p, double T)
{
    const double c2 = p.c * p.c;
    const double d = static_cast<double>(p.d);
    const Polynomial2 X = Polynomial2::monomial(1, 0);
    const Polynomial2 tshift = Polynomial2::monomial(0, 1) - Polynomial2::constant(p.nu * T);

    const Polynomial2 Mu = morawetz(u, p, T);
    const Polynomial2 Mv = morawetz(v, p, T);
    const Polynomial2 Wu = waveop(u, p.c);
    const Polynomial2 Wv = waveop(v, p.c);
    const Polynomial2 ut = u.dt(), ux = u.dx(), vt = v.dt(), vx = v.dx();
    const Polynomial2 energy_like = ut * vt - c2 * (ux * vx);

    const Polynomial2 A = Mu * vt + ut * Mv - p.beta * (tshift * energy_like);
    const Polynomial2 B = c2 * (Mu * vx) + c2 * (ux * Mv) - p.xi * (X * energy_like);

    const double lhs1 = (Mu * Wv)(x, t);
    const double lhs2 = (Wu * Mv)(x, t);
    const double r1 = A.dt()(x, t);
    const double r2 = -B.dx()(x, t);
    const double r3 = -(p.beta + p.xi * d) * (ut * vt)(x, t);
    const double r4 = -c2 * (p.beta + p.xi * (2.0 - d)) * (ux * vx)(x, t);

    IdentityResidual r;
    r.residual = std::abs(lhs1 + lhs2 - (r1 + r2 + r3 + r4));
    r.scale = std::abs(lhs1) + std::abs(lhs2) + std::abs(r1) + std::abs(r2) + std::abs(r3) + std::abs(r4);
    return r;
}

} // namespace morawetz
