#pragma once

#include "morawetz/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace morawetz {

struct QuadPoint1D {
    double x = 0.0;
    double w = 0.0;
};

/// Point of a cell rule: reference coordinates in [0,1]^2 and a physical weight.
struct CellPoint {
    double sx = 0.0;
    double st = 0.0;
    double w = 0.0;
};

using CellRule = std::vector<CellPoint>;

/// Straight line x - c t + x0 = 0 across which a field has a derivative jump.
struct KinkLine {
    double c = 1.0;
    double x0 = 0.0;

    [[nodiscard]] double phi(double x, double t) const noexcept { return x - c * t + x0; }
};

inline constexpr int max_gauss_points = 32;

namespace detail {

inline std::vector<QuadPoint1D> compute_gauss01(int n)
{
    std::vector<QuadPoint1D> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n on [-1,1].
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        // Recompute derivative at the converged root.
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        // Ascending order on [0,1].
        out[static_cast<std::size_t>(i)] = {0.5 * (1.0 - z), 0.5 * w};
    }
    return out;
}

inline const std::array<std::vector<QuadPoint1D>, max_gauss_points + 1>& gauss_table()
{
    static const auto table = [] {
        std::array<std::vector<QuadPoint1D>, max_gauss_points + 1> t;
        for (int n = 1; n <= max_gauss_points; ++n) {
            t[static_cast<std::size_t>(n)] = compute_gauss01(n);
        }
        return t;
    }();
    return table;
}

} // namespace detail

/// Gauss-Legendre rule with n points on [0,1]; exact to degree 2n-1.
inline const std::vector<QuadPoint1D>& gauss01(int n)
{
    if (n < 1 || n > max_gauss_points) {
        throw ConfigError("gauss01: point count must lie in 1..32, got " + std::to_string(n));
    }
    return detail::gauss_table()[static_cast<std::size_t>(n)];
}

/// Tensor Gauss rule on a cell of size hx by ht; weights sum to hx*ht.
inline CellRule element_rule(int nx, int nt, double hx, double ht)
{
    const auto& gx = gauss01(nx);
    const auto& gt = gauss01(nt);
    CellRule r;
    r.reserve(gx.size() * gt.size());
    for (const auto& qt : gt) {
        for (const auto& qx : gx) {
            r.push_back({qx.x, qt.x, qx.w * qt.w * hx * ht});
        }
    }
    return r;
}

namespace detail {

struct P2 {
    double x;
    double t;
};

/// Keep the part of a convex polygon where side * phi >= 0.
inline std::vector<P2> clip_halfplane(const std::vector<P2>& poly, const KinkLine& line, double side)
{
    std::vector<P2> out;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const P2& a = poly[k];
        const P2& b = poly[(k + 1) % n];
        const double fa = side * line.phi(a.x, a.t);
        const double fb = side * line.phi(b.x, b.t);
        if (fa >= 0.0) {
            out.push_back(a);
        }
        if ((fa > 0.0 && fb < 0.0) || (fa < 0.0 && fb > 0.0)) {
            const double s = fa / (fa - fb);
            out.push_back({a.x + s * (b.x - a.x), a.t + s * (b.t - a.t)});
        }
    }
    return out;
}

inline double polygon_area(const std::vector<P2>& p)
{
    double a = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const P2& u = p[k];
        const P2& v = p[(k + 1) % p.size()];
        a += u.x * v.t - v.x * u.t;
    }
    return 0.5 * a;
}

/// Collapsed (Duffy) n-by-n Gauss rule on triangle ABC, appended in physical coordinates.
inline void triangle_rule(const P2& A, const P2& B, const P2& C, int n, std::vector<std::array<double, 3>>& out)
{
    const double area2 = std::abs((B.x - A.x) * (C.t - A.t) - (C.x - A.x) * (B.t - A.t));
    const auto& g = gauss01(n);
    for (const auto& qu : g) {
        for (const auto& qv : g) {
            const double u = qu.x;
            const double v = qv.x;
            const double x = A.x + u * (B.x - A.x) + u * v * (C.x - B.x);
            const double t = A.t + u * (B.t - A.t) + u * v * (C.t - B.t);
            out.push_back({x, t, qu.w * qv.w * u * area2});
        }
    }
}

} // namespace detail

/**
 * Rule on the cell [x_left, x_left+hx] x [t_bottom, t_bottom+ht] that respects a kink line.
 *
 * Each side of the line is fan-triangulated and every triangle gets a collapsed Gauss rule with
 * n*n points, exact to degree 2n-2. When the line misses the cell interior the tensor rule of
 * order n is returned.
 */
inline CellRule split_rule(double x_left, double t_bottom, double hx, double ht, const KinkLine& line, int n)
{
    const std::vector<detail::P2> cell = {
        {x_left, t_bottom}, {x_left + hx, t_bottom}, {x_left + hx, t_bottom + ht}, {x_left, t_bottom + ht}};
    double fmin = line.phi(cell[0].x, cell[0].t);
    double fmax = fmin;
    for (const auto& p : cell) {
        const double f = line.phi(p.x, p.t);
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
    }
    const double scale = std::abs(hx) + std::abs(line.c * ht);
    if (!(fmin < -1e-14 * scale && fmax > 1e-14 * scale)) {
        return element_rule(n, n, hx, ht);
    }
    const double cell_area = hx * ht;
    std::vector<std::array<double, 3>> pts;
    for (const double side : {1.0, -1.0}) {
        const auto poly = detail::clip_halfplane(cell, line, side);
        if (poly.size() < 3 || std::abs(detail::polygon_area(poly)) < 1e-15 * cell_area) {
            continue;
        }
        for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
            const double a2 = std::abs((poly[k].x - poly[0].x) * (poly[k + 1].t - poly[0].t) -
                                       (poly[k + 1].x - poly[0].x) * (poly[k].t - poly[0].t));
            if (a2 < 1e-15 * cell_area) {
                continue;
            }
            detail::triangle_rule(poly[0], poly[k], poly[k + 1], n, pts);
        }
    }
    CellRule r;
    r.reserve(pts.size());
    for (const auto& p : pts) {
        r.push_back({(p[0] - x_left) / hx, (p[1] - t_bottom) / ht, p[2]});
    }
    return r;
}

/**
 * Gauss rule with n points on the reference segment [0,1] of physical length h,
 * split at `cut` when it lies strictly inside. Weights are physical.
 */
inline std::vector<QuadPoint1D> segment_rule(int n, double h, std::optional<double> cut = std::nullopt)
{
    const auto& g = gauss01(n);
    std::vector<QuadPoint1D> r;
    if (cut && *cut > 1e-14 && *cut < 1.0 - 1e-14) {
        const double c = *cut;
        r.reserve(2 * g.size());
        for (const auto& q : g) {
            r.push_back({c * q.x, c * q.w * h});
        }
        for (const auto& q : g) {
            r.push_back({c + (1.0 - c) * q.x, (1.0 - c) * q.w * h});
        }
        return r;
    }
    r.reserve(g.size());
    for (const auto& q : g) {
        r.push_back({q.x, q.w * h});
    }
    return r;
}

} // namespace morawetz
