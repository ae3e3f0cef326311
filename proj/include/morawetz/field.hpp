#pragma once

#include "morawetz/basis.hpp"
#include "morawetz/geometry.hpp"
#include "morawetz/jet.hpp"
#include "morawetz/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>

namespace morawetz {

/// Coefficient vector of a BFS function on a mesh.
class DiscreteField {
public:
    explicit DiscreteField(const Mesh& mesh) : mesh_(mesh), coeffs_(mesh.num_dofs(), 0.0) {}
    DiscreteField(const Mesh& mesh, Vector coeffs) : mesh_(mesh), coeffs_(std::move(coeffs))
    {
        if (coeffs_.size() != mesh_.num_dofs()) throw std::invalid_argument("DiscreteField: length mismatch");
    }

    [[nodiscard]] const Mesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const Vector& coeffs() const noexcept { return coeffs_; }
    Vector& coeffs() noexcept { return coeffs_; }

    /// Jet at reference point (sx, st) of cell (it, jx).
    [[nodiscard]] Jet2 cell_jet(std::size_t it, std::size_t jx, double sx, double st) const
    {
        const auto shapes = shape_jets(sx, st, mesh_.hx(), mesh_.ht());
        const auto dofs = mesh_.dofs().cell_dofs(it, jx);
        Jet2 r;
        for (std::size_t k = 0; k < 16; ++k) {
            const double a = coeffs_[dofs[k]];
            if (a != 0.0) r += a * shapes[k];
        }
        return r;
    }

    /// Jet at a physical point of the closed cylinder.
    [[nodiscard]] Jet2 evaluate(double x, double t) const
    {
        const auto [jx, sx] = locate(x, mesh_.geometry().x_lo(), mesh_.hx(), mesh_.nx());
        const auto [it, st] = locate(t, 0.0, mesh_.ht(), mesh_.nt());
        return cell_jet(it, jx, sx, st);
    }

private:
    static std::pair<std::size_t, double> locate(double y, double y0, double h, std::size_t n)
    {
        const double r = (y - y0) / h;
        double cell = std::floor(r);
        cell = std::clamp(cell, 0.0, static_cast<double>(n - 1));
        return {static_cast<std::size_t>(cell), r - cell};
    }

    Mesh mesh_;
    Vector coeffs_;
};

/// BFS interpolant: nodal value, u_x, u_t and u_xt taken from the jet.
inline DiscreteField interpolate(const Mesh& mesh, const std::function<Jet2(double, double)>& u)
{
    DiscreteField f(mesh);
    const DofMap& dm = mesh.dofs();
    for (std::size_t i = 0; i <= mesh.nt(); ++i) {
        for (std::size_t j = 0; j <= mesh.nx(); ++j) {
            const Jet2 J = u(mesh.x_node(j), mesh.t_node(i));
            f.coeffs()[dm.index(i, j, DofKind::val)] = J.v;
            f.coeffs()[dm.index(i, j, DofKind::dx)] = J.v_x;
            f.coeffs()[dm.index(i, j, DofKind::dt)] = J.v_t;
            f.coeffs()[dm.index(i, j, DofKind::dxdt)] = J.v_xt;
        }
    }
    return f;
}

/// Interpolant of the constant function 1.
inline DiscreteField constant_field(const Mesh& mesh, double value = 1.0)
{
    return interpolate(mesh, [value](double, double) { return Jet2{value, 0, 0, 0, 0, 0}; });
}

/// Field with independent standard normal coefficients.
inline DiscreteField random_field(const Mesh& mesh, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    DiscreteField f(mesh);
    for (double& v : f.coeffs()) v = nd(rng);
    return f;
}

} // namespace morawetz
