#pragma once

#include "morawetz/jet.hpp"

#include <array>
#include <cstddef>

namespace morawetz {

/**
 * Reference cubic Hermite shapes on [0,1] and their derivatives up to order 2.
 *
 * k = 0: value at s=0, k = 1: slope at s=0, k = 2: value at s=1, k = 3: slope at s=1.
 * Orders above 3 return 0; orders 0..3 are supported.
 */
[[nodiscard]] constexpr double hermite1d(int k, double s, int order) noexcept
{
    const double s2 = s * s;
    const double s3 = s2 * s;
    switch (order) {
    case 0:
        switch (k) {
        case 0: return 1.0 - 3.0 * s2 + 2.0 * s3;
        case 1: return s - 2.0 * s2 + s3;
        case 2: return 3.0 * s2 - 2.0 * s3;
        case 3: return -s2 + s3;
        default: return 0.0;
        }
    case 1:
        switch (k) {
        case 0: return -6.0 * s + 6.0 * s2;
        case 1: return 1.0 - 4.0 * s + 3.0 * s2;
        case 2: return 6.0 * s - 6.0 * s2;
        case 3: return -2.0 * s + 3.0 * s2;
        default: return 0.0;
        }
    case 2:
        switch (k) {
        case 0: return -6.0 + 12.0 * s;
        case 1: return -4.0 + 6.0 * s;
        case 2: return 6.0 - 12.0 * s;
        case 3: return -2.0 + 6.0 * s;
        default: return 0.0;
        }
    case 3:
        switch (k) {
        case 0: return 12.0;
        case 1: return 6.0;
        case 2: return -12.0;
        case 3: return 6.0;
        default: return 0.0;
        }
    default:
        return 0.0;
    }
}

/// Local index of a BFS shape: node (node_x, node_t) in {0,1}^2, derivative kind (kx, kt) in {0,1}^2.
[[nodiscard]] constexpr int local_index(int node_x, int node_t, int kx, int kt) noexcept
{
    return 4 * (2 * node_t + node_x) + kx + 2 * kt;
}

namespace detail {

/// Physical 1D shape derivative: reference index 2*node + kind, scaled so derivative DOFs are physical.
[[nodiscard]] constexpr double hermite_phys(int node, int kind, double s, int order, double h) noexcept
{
    double scale = kind == 1 ? h : 1.0;
    for (int a = 0; a < order; ++a) {
        scale /= h;
    }
    return scale * hermite1d(2 * node + kind, s, order);
}

} // namespace detail

/**
 * Physical derivative of order (a, b) in (x, t) of BFS shape `local` at reference point (sx, st)
 * of a cell of size hx by ht.
 */
[[nodiscard]] constexpr double shape2d(int local, double sx, double st, int a, int b, double hx, double ht) noexcept
{
    const int node = local / 4;
    const int kind = local % 4;
    const int node_x = node % 2;
    const int node_t = node / 2;
    const int kx = kind % 2;
    const int kt = kind / 2;
    return detail::hermite_phys(node_x, kx, sx, a, hx) * detail::hermite_phys(node_t, kt, st, b, ht);
}

/// Jets of all 16 shapes of a cell at one reference point.
[[nodiscard]] inline std::array<Jet2, 16> shape_jets(double sx, double st, double hx, double ht) noexcept
{
    std::array<std::array<double, 3>, 4> fx{};
    std::array<std::array<double, 3>, 4> ft{};
    for (int node = 0; node < 2; ++node) {
        for (int kind = 0; kind < 2; ++kind) {
            for (int o = 0; o < 3; ++o) {
                fx[2 * node + kind][o] = detail::hermite_phys(node, kind, sx, o, hx);
                ft[2 * node + kind][o] = detail::hermite_phys(node, kind, st, o, ht);
            }
        }
    }
    std::array<Jet2, 16> out{};
    for (int local = 0; local < 16; ++local) {
        const int node = local / 4;
        const int kind = local % 4;
        const auto& X = fx[2 * (node % 2) + kind % 2];
        const auto& Tt = ft[2 * (node / 2) + kind / 2];
        Jet2& j = out[local];
        j.v = X[0] * Tt[0];
        j.v_x = X[1] * Tt[0];
        j.v_t = X[0] * Tt[1];
        j.v_xx = X[2] * Tt[0];
        j.v_tt = X[0] * Tt[2];
        j.v_xt = X[1] * Tt[1];
    }
    return out;
}

} // namespace morawetz
