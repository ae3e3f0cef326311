#pragma once

#include "morawetz/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>

namespace morawetz {

/// Boundary endpoint of the space interval.
enum class End { lo, hi };

/// Star-shapedness data of the impedance and Dirichlet boundaries.
struct StarShape {
    double L_I = 0.0;
    double delta_I = 0.0;
    double L_D = 0.0;     ///< zero when there is no Dirichlet boundary
    double delta_D = 0.0; ///< zero when there is no Dirichlet boundary
};

/**
 * Space-time cylinder (x_lo, x_hi) x (0, T) with its boundary partition.
 *
 * Impedance-only domains must contain the origin in their interior so that
 * x.n > 0 at both ends. Mixed domains carry the Dirichlet condition at x_lo
 * and must lie on the positive axis, so that -x.n > 0 on the Dirichlet end
 * and x.n > 0 on the impedance end. Coordinates are never re-centred.
 */
class Geometry {
public:
    Geometry(double x_lo, double x_hi, double T, bool dirichlet_lo = false)
        : x_lo_(x_lo), x_hi_(x_hi), T_(T), dirichlet_lo_(dirichlet_lo)
    {
        if (!(x_lo < x_hi)) {
            throw ConfigError("geometry: require x_lo < x_hi");
        }
        if (!(T > 0.0)) {
            throw ConfigError("geometry: require T > 0");
        }
        if (dirichlet_lo) {
            if (!(x_lo > 0.0)) {
                std::ostringstream os;
                os << "geometry: Dirichlet star-shape assumption violated: -x.n = " << x_lo
                   << " at x_lo must be positive (shift coordinates so that 0 < x_lo < x_hi)";
                throw ConfigError(os.str());
            }
        } else if (!(x_lo < 0.0 && x_hi > 0.0)) {
            throw ConfigError(
                "geometry: impedance star-shape assumption violated: x.n must be positive at "
                "both endpoints, which requires x_lo < 0 < x_hi");
        }
    }

    static Geometry impedance(double x_lo, double x_hi, double T) { return {x_lo, x_hi, T, false}; }
    static Geometry mixed(double x_lo, double x_hi, double T) { return {x_lo, x_hi, T, true}; }

    [[nodiscard]] double x_lo() const noexcept { return x_lo_; }
    [[nodiscard]] double x_hi() const noexcept { return x_hi_; }
    [[nodiscard]] double T() const noexcept { return T_; }
    [[nodiscard]] double length() const noexcept { return x_hi_ - x_lo_; }
    [[nodiscard]] bool has_dirichlet() const noexcept { return dirichlet_lo_; }
    [[nodiscard]] static constexpr int dim() noexcept { return 1; }

    [[nodiscard]] bool is_impedance(End e) const noexcept { return !(dirichlet_lo_ && e == End::lo); }
    [[nodiscard]] bool is_dirichlet(End e) const noexcept { return dirichlet_lo_ && e == End::lo; }

    [[nodiscard]] double coordinate(End e) const noexcept { return e == End::lo ? x_lo_ : x_hi_; }
    /// Outward unit normal in 1D.
    [[nodiscard]] static double normal(End e) noexcept { return e == End::lo ? -1.0 : 1.0; }
    /// x.n at an endpoint.
    [[nodiscard]] double x_dot_n(End e) const noexcept { return coordinate(e) * normal(e); }

    [[nodiscard]] StarShape star_shape() const noexcept
    {
        StarShape s;
        if (dirichlet_lo_) {
            s.L_I = x_hi_;
            s.delta_I = 1.0;
            s.L_D = x_lo_;
            s.delta_D = 1.0;
        } else {
            s.L_I = std::max(std::abs(x_lo_), x_hi_);
            s.delta_I = std::min(std::abs(x_lo_), x_hi_) / s.L_I;
        }
        return s;
    }

private:
    double x_lo_;
    double x_hi_;
    double T_;
    bool dirichlet_lo_;
};

inline StarShape star_shape_params(const Geometry& g) { return g.star_shape(); }

/// Derivative kind carried by a Hermite degree of freedom.
enum class DofKind : int { val = 0, dx = 1, dt = 2, dxdt = 3 };

struct DofLocation {
    std::size_t i = 0; ///< time node
    std::size_t j = 0; ///< space node
    DofKind kind = DofKind::val;

    friend bool operator==(const DofLocation&, const DofLocation&) = default;
};

/**
 * Numbering of the tensor-product Hermite degrees of freedom.
 *
 * Four DOFs per node, nodes ordered slab by slab along the direction with
 * more nodes so that the Galerkin matrix bandwidth is 4 (min(N_x, N_t) + 2) + 3.
 */
class DofMap {
public:
    DofMap(std::size_t nx, std::size_t nt)
        : nx_(nx), nt_(nt), time_major_(nx <= nt) {}

    [[nodiscard]] std::size_t size() const noexcept { return 4 * (nx_ + 1) * (nt_ + 1); }
    [[nodiscard]] bool time_major() const noexcept { return time_major_; }

    [[nodiscard]] std::size_t node(std::size_t i, std::size_t j) const noexcept
    {
        return time_major_ ? i * (nx_ + 1) + j : j * (nt_ + 1) + i;
    }

    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, DofKind k) const noexcept
    {
        return 4 * node(i, j) + static_cast<std::size_t>(k);
    }

    [[nodiscard]] DofLocation location(std::size_t index) const noexcept
    {
        const std::size_t n = index / 4;
        DofLocation loc;
        loc.kind = static_cast<DofKind>(index % 4);
        if (time_major_) {
            loc.i = n / (nx_ + 1);
            loc.j = n % (nx_ + 1);
        } else {
            loc.j = n / (nt_ + 1);
            loc.i = n % (nt_ + 1);
        }
        return loc;
    }

    /// Half bandwidth of any matrix coupling DOFs of neighbouring nodes.
    [[nodiscard]] std::size_t bandwidth() const noexcept
    {
        return 4 * (std::min(nx_, nt_) + 2) + 3;
    }

    /// Global indices of the 16 DOFs of cell (it, jx), in the local order of basis::shape2d.
    [[nodiscard]] std::array<std::size_t, 16> cell_dofs(std::size_t it, std::size_t jx) const noexcept
    {
        std::array<std::size_t, 16> out{};
        for (std::size_t nt = 0; nt < 2; ++nt) {
            for (std::size_t nxl = 0; nxl < 2; ++nxl) {
                const std::size_t base = 4 * node(it + nt, jx + nxl);
                for (std::size_t k = 0; k < 4; ++k) {
                    out[4 * (2 * nt + nxl) + k] = base + k;
                }
            }
        }
        return out;
    }

private:
    std::size_t nx_;
    std::size_t nt_;
    bool time_major_;
};

/// Uniform tensor-product space-time mesh.
class Mesh {
public:
    Mesh(Geometry geom, std::size_t nx, std::size_t nt)
        : geom_(geom), nx_(nx), nt_(nt), dofs_(nx, nt)
    {
        if (nx < 1 || nt < 1) {
            throw ConfigError("mesh: N_x and N_t must be at least 1");
        }
        hx_ = geom.length() / static_cast<double>(nx);
        ht_ = geom.T() / static_cast<double>(nt);
    }

    [[nodiscard]] const Geometry& geometry() const noexcept { return geom_; }
    [[nodiscard]] std::size_t nx() const noexcept { return nx_; }
    [[nodiscard]] std::size_t nt() const noexcept { return nt_; }
    [[nodiscard]] double hx() const noexcept { return hx_; }
    [[nodiscard]] double ht() const noexcept { return ht_; }
    /// Combined mesh size sqrt(hx^2 + ht^2).
    [[nodiscard]] double h() const noexcept { return std::hypot(hx_, ht_); }
    [[nodiscard]] std::size_t num_cells() const noexcept { return nx_ * nt_; }

    [[nodiscard]] double x_node(std::size_t j) const noexcept
    {
        return j == nx_ ? geom_.x_hi() : geom_.x_lo() + static_cast<double>(j) * hx_;
    }
    [[nodiscard]] double t_node(std::size_t i) const noexcept
    {
        return i == nt_ ? geom_.T() : static_cast<double>(i) * ht_;
    }

    [[nodiscard]] const DofMap& dofs() const noexcept { return dofs_; }
    [[nodiscard]] std::size_t num_dofs() const noexcept { return dofs_.size(); }

private:
    Geometry geom_;
    std::size_t nx_;
    std::size_t nt_;
    double hx_ = 0.0;
    double ht_ = 0.0;
    DofMap dofs_;
};

inline Mesh build_mesh(const Geometry& geom, std::size_t nx, std::size_t nt)
{
    return Mesh(geom, nx, nt);
}

} // namespace morawetz
