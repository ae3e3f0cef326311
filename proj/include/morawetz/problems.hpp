#pragma once

#include "morawetz/errors.hpp"
#include "morawetz/geometry.hpp"
#include "morawetz/jet.hpp"
#include "morawetz/operators.hpp"
#include "morawetz/quadrature.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace morawetz {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;
using JetFn = std::function<Jet2(double, double)>;

/// Exact solution with derivatives through second order.
struct ExactSolution {
    JetFn jet;
    std::optional<KinkLine> kink; ///< line where the derivatives jump, if any
};

/**
 * Initial-boundary value problem data on a space-time cylinder.
 *
 * g_lo / g_hi are impedance data at the two endpoints; on a mixed geometry the lower
 * endpoint carries the Dirichlet trace g_D and its time derivative g_D_t instead.
 */
struct ProblemSpec {
    std::string name;
    Geometry geometry = Geometry::impedance(-1.0, 1.0, 1.0);
    double c = 1.0;
    double theta = 1.0;
    Fn2 f = [](double, double) { return 0.0; };
    Fn1 g_lo = [](double) { return 0.0; };
    Fn1 g_hi = [](double) { return 0.0; };
    Fn1 g_D = [](double) { return 0.0; };
    Fn1 g_D_t = [](double) { return 0.0; };
    Fn1 u0 = [](double) { return 0.0; };
    Fn1 u0_x = [](double) { return 0.0; };
    Fn1 u1 = [](double) { return 0.0; };
    std::optional<ExactSolution> exact;

    [[nodiscard]] const Fn1& g_impedance(End e) const { return e == End::lo ? g_lo : g_hi; }
    [[nodiscard]] const ExactSolution& require_exact() const
    {
        if (!exact) throw MissingExactSolution("problem '" + name + "' has no exact solution");
        return *exact;
    }
};

struct DoubleGaussian {
    double w = 0.0;
    double dw = 0.0;
    double d2w = 0.0;
};

/// w(x) = exp(-20 (x - 0.1)^2) - exp(-20 (x + 0.1)^2) with exact derivatives.
[[nodiscard]] inline DoubleGaussian double_gaussian(double x) noexcept
{
    const auto bump = [](double y) {
        const double g = std::exp(-20.0 * y * y);
        return std::array<double, 3>{g, -40.0 * y * g, (1600.0 * y * y - 40.0) * g};
    };
    const auto a = bump(x - 0.1);
    const auto b = bump(x + 0.1);
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

/// Impedance trace d_n u + (theta c)^{-1} u_t of a jet at endpoint e.
[[nodiscard]] inline double impedance_trace(const Jet2& j, End e, double c, double theta) noexcept
{
    return Geometry::normal(e) * j.v_x + j.v_t / (theta * c);
}

/// Manufactured problem whose data are the traces of `jet`.
inline ProblemSpec from_exact(std::string name, const Geometry& geom, double c, double theta, JetFn jet,
                              std::optional<KinkLine> kink = std::nullopt)
{
    ProblemSpec p;
    p.name = std::move(name);
    p.geometry = geom;
    p.c = c;
    p.theta = theta;
    p.f = [jet, c](double x, double t) { return waveop(jet(x, t), c); };
    const double xl = geom.x_lo();
    const double xh = geom.x_hi();
    p.g_lo = [jet, xl, c, theta](double t) { return impedance_trace(jet(xl, t), End::lo, c, theta); };
    p.g_hi = [jet, xh, c, theta](double t) { return impedance_trace(jet(xh, t), End::hi, c, theta); };
    if (geom.has_dirichlet()) {
        p.g_D = [jet, xl](double t) { return jet(xl, t).v; };
        p.g_D_t = [jet, xl](double t) { return jet(xl, t).v_t; };
    }
    p.u0 = [jet](double x) { return jet(x, 0.0).v; };
    p.u0_x = [jet](double x) { return jet(x, 0.0).v_x; };
    p.u1 = [jet](double x) { return jet(x, 0.0).v_t; };
    p.exact = ExactSolution{std::move(jet), kink};
    return p;
}

namespace exact {

/// sin^2 t (cos(pi x) + 1).
inline Jet2 p1(double x, double t)
{
    const double pi = std::numbers::pi;
    const double S = std::sin(t) * std::sin(t);
    const double S1 = std::sin(2.0 * t);
    const double S2 = 2.0 * std::cos(2.0 * t);
    const double C = std::cos(pi * x) + 1.0;
    const double C1 = -pi * std::sin(pi * x);
    const double C2 = -pi * pi * std::cos(pi * x);
    return {S * C, S * C1, S1 * C, S * C2, S2 * C, S1 * C1};
}

/// w(x - c t) + R w(2 - x - c t) with R = (theta - 1)/(theta + 1).
inline Jet2 p2(double x, double t, double c = 2.0, double theta = 10.0)
{
    const double R = (theta - 1.0) / (theta + 1.0);
    const DoubleGaussian a = double_gaussian(x - c * t);
    const DoubleGaussian b = double_gaussian(2.0 - x - c * t);
    return {a.w + R * b.w,
            a.dw - R * b.dw,
            -c * a.dw - c * R * b.dw,
            a.d2w + R * b.d2w,
            c * c * (a.d2w + R * b.d2w),
            -c * a.d2w + c * R * b.d2w};
}

/// w(x - c t + 1) on the side x - c t + 1 > 0, zero elsewhere.
inline Jet2 p3(double x, double t, double c = 1.0)
{
    const double a = x - c * t + 1.0;
    if (!(a > 0.0)) return {};
    const DoubleGaussian g = double_gaussian(a);
    return {g.w, g.dw, -c * g.dw, g.d2w, c * c * g.d2w, -c * g.d2w};
}

} // namespace exact

enum class ProblemId { P1, P2, P3 };

inline ProblemId parse_problem_id(const std::string& s)
{
    if (s == "p1" || s == "P1") return ProblemId::P1;
    if (s == "p2" || s == "P2") return ProblemId::P2;
    if (s == "p3" || s == "P3") return ProblemId::P3;
    throw ConfigError("unknown problem id '" + s + "' (expected p1, p2 or p3)");
}

/// Benchmark problems on (-1,1) x (0,1).
inline ProblemSpec catalog(ProblemId id)
{
    const Geometry g = Geometry::impedance(-1.0, 1.0, 1.0);
    switch (id) {
    case ProblemId::P1: {
        ProblemSpec p = from_exact("p1", g, 1.0, 1.0, [](double x, double t) { return exact::p1(x, t); });
        const double pi = std::numbers::pi;
        p.f = [pi](double x, double t) {
            const double s = std::sin(t);
            return 2.0 * std::cos(2.0 * t) * (std::cos(pi * x) + 1.0) + pi * pi * s * s * std::cos(pi * x);
        };
        p.g_lo = [](double) { return 0.0; };
        p.g_hi = [](double) { return 0.0; };
        p.u0 = [](double) { return 0.0; };
        p.u0_x = [](double) { return 0.0; };
        p.u1 = [](double) { return 0.0; };
        return p;
    }
    case ProblemId::P2: {
        const double c = 2.0;
        const double theta = 10.0;
        const double R = (theta - 1.0) / (theta + 1.0);
        ProblemSpec p = from_exact("p2", g, c, theta, [c, theta](double x, double t) { return exact::p2(x, t, c, theta); });
        p.f = [](double, double) { return 0.0; };
        // Exact trace at x = -1 is below 4e-6 in magnitude and replaced by zero.
        p.g_lo = [](double) { return 0.0; };
        p.g_hi = [](double) { return 0.0; };
        p.u0 = [R](double x) { return double_gaussian(x).w + R * double_gaussian(2.0 - x).w; };
        p.u0_x = [R](double x) { return double_gaussian(x).dw - R * double_gaussian(2.0 - x).dw; };
        p.u1 = [R, c](double x) { return -c * double_gaussian(x).dw - c * R * double_gaussian(2.0 - x).dw; };
        return p;
    }
    case ProblemId::P3: {
        ProblemSpec p = from_exact("p3", g, 1.0, 1.0, [](double x, double t) { return exact::p3(x, t, 1.0); },
                                   KinkLine{1.0, 1.0});
        p.f = [](double, double) { return 0.0; };
        p.g_lo = [](double) { return 0.0; };
        p.g_hi = [](double) { return 0.0; };
        p.u0 = [](double x) { return x + 1.0 >= 0.0 ? double_gaussian(x + 1.0).w : 0.0; };
        p.u0_x = [](double x) { return x + 1.0 >= 0.0 ? double_gaussian(x + 1.0).dw : 0.0; };
        p.u1 = [](double x) { return x + 1.0 >= 0.0 ? -double_gaussian(x + 1.0).dw : 0.0; };
        return p;
    }
    }
    throw ConfigError("unknown problem id");
}

inline ProblemSpec catalog(const std::string& id) { return catalog(parse_problem_id(id)); }

/// d_n u0 + (c theta)^{-1} u1 - g_I(0) at an impedance endpoint.
inline double compatibility_defect(const ProblemSpec& p, End e)
{
    const double x = p.geometry.coordinate(e);
    return Geometry::normal(e) * p.u0_x(x) + p.u1(x) / (p.c * p.theta) - p.g_impedance(e)(0.0);
}

/// True when the corner compatibility condition holds at every impedance endpoint.
inline bool is_compatible(const ProblemSpec& p, double tol = 1e-9)
{
    for (End e : {End::lo, End::hi}) {
        if (!p.geometry.is_impedance(e)) continue;
        if (std::abs(compatibility_defect(p, e)) > tol) return false;
    }
    return true;
}

namespace detail {

/// Composite Gauss integral of g over (a, b).
inline double integrate1d(const Fn1& g, double a, double b, int panels, int n)
{
    const auto& q = gauss01(n);
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double x0 = a + k * h;
        for (const auto& p : q) s += p.w * h * g(x0 + p.x * h);
    }
    return s;
}

inline double integrate2d(const Fn2& g, double a, double b, double T, int panels, int n)
{
    const auto& q = gauss01(n);
    const double hx = (b - a) / panels;
    const double ht = T / panels;
    double s = 0.0;
    for (int i = 0; i < panels; ++i)
        for (int j = 0; j < panels; ++j)
            for (const auto& qt : q)
                for (const auto& qx : q)
                    s += qx.w * qt.w * hx * ht * g(a + (j + qx.x) * hx, (i + qt.x) * ht);
    return s;
}

} // namespace detail

/**
 * Data norm: sqrt(T^2 |f|_Q^2 + T^{-1} |u0|^2 + T |u1|^2 + c^2 T |u0'|^2 + c^2 L_I |g_I|^2_{Sigma_I}),
 * plus L_D |g_D'|^2 on a mixed geometry. Composite Gauss rules with `panels` panels per direction.
 */
inline double data_norm(const ProblemSpec& p, int n_quad = 12, int panels = 64)
{
    const Geometry& g = p.geometry;
    const double T = g.T();
    const double c2 = p.c * p.c;
    const StarShape s = g.star_shape();
    const double a = g.x_lo();
    const double b = g.x_hi();
    const Fn2 f2 = [&](double x, double t) { const double v = p.f(x, t); return v * v; };
    double r = T * T * detail::integrate2d(f2, a, b, T, panels, n_quad);
    r += detail::integrate1d([&](double x) { const double v = p.u0(x); return v * v / T; }, a, b, panels, n_quad);
    r += detail::integrate1d([&](double x) { const double v = p.u1(x); return T * v * v; }, a, b, panels, n_quad);
    r += detail::integrate1d([&](double x) { const double v = p.u0_x(x); return c2 * T * v * v; }, a, b, panels, n_quad);
    for (End e : {End::lo, End::hi}) {
        if (g.is_impedance(e)) {
            const Fn1& gi = p.g_impedance(e);
            r += c2 * s.L_I * detail::integrate1d([&](double t) { const double v = gi(t); return v * v; }, 0.0, T, panels, n_quad);
        } else {
            r += s.L_D * detail::integrate1d([&](double t) { const double v = p.g_D_t(t); return v * v; }, 0.0, T, panels, n_quad);
        }
    }
    return std::sqrt(r);
}

/// Exact solutions available by name in configuration files.
inline const std::map<std::string, std::function<JetFn(double c, double theta)>>& exact_registry()
{
    static const std::map<std::string, std::function<JetFn(double, double)>> reg = {
        {"zero", [](double, double) -> JetFn { return [](double, double) { return Jet2{}; }; }},
        {"p1", [](double, double) -> JetFn { return [](double x, double t) { return exact::p1(x, t); }; }},
        {"p2", [](double c, double th) -> JetFn { return [c, th](double x, double t) { return exact::p2(x, t, c, th); }; }},
        {"p3", [](double c, double) -> JetFn { return [c](double x, double t) { return exact::p3(x, t, c); }; }},
        {"travelling_gaussian",
         [](double c, double) -> JetFn {
             return [c](double x, double t) {
                 const DoubleGaussian g = double_gaussian(x - c * t);
                 return Jet2{g.w, g.dw, -c * g.dw, g.d2w, c * c * g.d2w, -c * g.d2w};
             };
         }},
        {"standing_wave",
         [](double c, double) -> JetFn {
             return [c](double x, double t) {
                 const double pi = std::numbers::pi;
                 const double sx = std::sin(pi * x), cx = std::cos(pi * x);
                 const double st = std::sin(pi * c * t), ct = std::cos(pi * c * t);
                 const double k = pi * c;
                 return Jet2{sx * ct, pi * cx * ct, -k * sx * st, -pi * pi * sx * ct, -k * k * sx * ct, -pi * k * cx * st};
             };
         }},
    };
    return reg;
}

} // namespace morawetz
