#pragma once

// Closed affine subspaces V = v + (V - V) and projection methods on them.
//
// Everything reduces to the linear case through P_V(x) = P_{V-v}(x - v) + v.
// The anchor is kept canonical, v = P_V(0), which is the point the affine
// error bounds are measured from.

#include "projopt/projmethods.hpp"
#include "projopt/subspace.hpp"

#include <span>

namespace projopt {

class AffineSubspace {
public:
    /// point + span(spanning); the stored anchor is the least-norm point.
    static AffineSubspace from_point_span(const Vector& point, const Matrix& spanning);
    static AffineSubspace from_point_direction(const Vector& point, Subspace direction);

    [[nodiscard]] const Vector& anchor() const { return anchor_; }
    [[nodiscard]] const Subspace& direction() const { return direction_; }
    [[nodiscard]] Index ambient_dim() const { return direction_.ambient_dim(); }

    /// ||(I - P_dir)(x - v)|| <= tol.
    [[nodiscard]] bool contains(const Vector& x, double tol = 1e-10) const;

private:
    AffineSubspace(Vector anchor, Subspace direction) : anchor_(std::move(anchor)), direction_(std::move(direction))
    {
    }

    Vector anchor_;
    Subspace direction_;
};

/// Relative residual above which the affine subspaces are declared disjoint.
inline constexpr double kFeasibilityTol = 1e-8;

/// v + P_{V-V}(x - v).
[[nodiscard]] Vector project_affine(const AffineSubspace& v, const Vector& x);

/// Intersection of the V_i. Throws InfeasibleError when it is empty.
[[nodiscard]] AffineSubspace intersection_affine(std::span<const AffineSubspace> list);

/// Direction subspaces V_i - V_i.
[[nodiscard]] std::vector<Subspace> directions(std::span<const AffineSubspace> list);

/// x_{k+1} = (1/r) sum P_{V_i}(x_k); errors[k] = ||x_k - P_V(x_0)||,
/// bounds[k] = q^k ||x_0 - P_V(0)|| with q taken from the directions.
[[nodiscard]] IterationTrace simultaneous_affine(std::span<const AffineSubspace> list, const Vector& x0, int k_max);

/// Cyclic sweeps x_{k+1} = P_{V_r} ... P_{V_1}(x_k), bounds as in bound_factors.
[[nodiscard]] IterationTrace cyclic_affine(std::span<const AffineSubspace> list, const Vector& x0, int k_max);

} // namespace projopt
