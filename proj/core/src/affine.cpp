#include "projopt/affine.hpp"

#include "projopt/errors.hpp"

#include <algorithm>
#include <string>

namespace projopt {

namespace {

Index require_common_affine_dim(std::span<const AffineSubspace> list, const char* what)
{
    if (list.empty()) {
        throw InputError(std::string(what) + ": empty list");
    }
    const Index n = list.front().ambient_dim();
    for (const auto& v : list) {
        if (v.ambient_dim() != n) {
            throw InputError(std::string(what) + ": affine subspaces live in different ambient dimensions");
        }
    }
    return n;
}

void require_start(const Vector& x0, Index n, int k_max, const char* what)
{
    if (x0.size() != n) {
        throw InputError(std::string(what) + ": start vector has dimension " + std::to_string(x0.size()) +
                         ", expected " + std::to_string(n));
    }
    if (k_max < 0) {
        throw InputError(std::string(what) + ": k_max must be non-negative");
    }
    require_finite(x0, what);
}

template <class Step>
IterationTrace run_affine(std::span<const AffineSubspace> list, const Vector& x0, int k_max, IterKind kind,
                          Step step, const char* what)
{
    const Index n = require_common_affine_dim(list, what);
    require_start(x0, n, k_max, what);
    const AffineSubspace target = intersection_affine(list);

    IterationTrace trace;
    trace.start = x0;
    const Vector limit = project_affine(target, x0);
    Vector x = x0;
    trace.errors.push_back((x - limit).norm());
    for (int k = 1; k <= k_max; ++k) {
        x = step(x);
        trace.errors.push_back((x - limit).norm());
    }

    const std::vector<Subspace> dirs = directions(list);
    const double scale = (x0 - target.anchor()).norm();
    trace.bounds = bound_factors(kind, dirs, k_max);
    for (double& b : trace.bounds) {
        b *= scale;
    }
    return trace;
}

} // namespace

AffineSubspace AffineSubspace::from_point_direction(const Vector& point, Subspace direction)
{
    if (point.size() != direction.ambient_dim()) {
        throw InputError("AffineSubspace: point has dimension " + std::to_string(point.size()) +
                         ", direction lives in R^" + std::to_string(direction.ambient_dim()));
    }
    require_finite(point, "AffineSubspace");
    Vector anchor = point - project(direction, point);
    return AffineSubspace(std::move(anchor), std::move(direction));
}

AffineSubspace AffineSubspace::from_point_span(const Vector& point, const Matrix& spanning)
{
    if (point.size() != spanning.rows()) {
        throw InputError("from_point_span: point has dimension " + std::to_string(point.size()) +
                         ", spanning vectors have " + std::to_string(spanning.rows()));
    }
    return from_point_direction(point, Subspace::from_spanning(spanning));
}

bool AffineSubspace::contains(const Vector& x, double tol) const
{
    if (x.size() != ambient_dim()) {
        throw InputError("AffineSubspace::contains: dimension mismatch");
    }
    const Vector offset = x - anchor_;
    return (offset - project(direction_, offset)).norm() <= tol;
}

Vector project_affine(const AffineSubspace& v, const Vector& x)
{
    if (x.size() != v.ambient_dim()) {
        throw InputError("project_affine: vector has dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(v.ambient_dim()));
    }
    require_finite(x, "project_affine");
    return project(v.direction(), x - v.anchor()) + v.anchor();
}

std::vector<Subspace> directions(std::span<const AffineSubspace> list)
{
    std::vector<Subspace> out;
    out.reserve(list.size());
    for (const auto& v : list) {
        out.push_back(v.direction());
    }
    return out;
}

AffineSubspace intersection_affine(std::span<const AffineSubspace> list)
{
    const Index n = require_common_affine_dim(list, "intersection_affine");
    if (list.size() == 1) {
        return list.front();
    }
    const auto r = static_cast<Index>(list.size());
    // x ∈ V_i  <=>  (I - P_i) x = (I - P_i) v_i
    Matrix a(r * n, n);
    Vector b(r * n);
    for (Index i = 0; i < r; ++i) {
        const AffineSubspace& v = list[static_cast<std::size_t>(i)];
        const Matrix& q = v.direction().basis();
        const Matrix complement = Matrix::Identity(n, n) - q * q.transpose();
        a.middleRows(i * n, n) = complement;
        b.segment(i * n, n) = complement * v.anchor();
    }
    // Minimum-norm least-squares solution; on a consistent system this is P_V(0).
    const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
    const Vector x = cod.solve(b);
    const double residual = (a * x - b).norm();
    const double scale = std::max(1.0, b.norm());
    if (residual > kFeasibilityTol * scale) {
        throw InfeasibleError("intersection_affine: affine subspaces do not intersect (relative residual " +
                              format_residual(residual / scale) + " > " + format_residual(kFeasibilityTol) + ")");
    }
    return AffineSubspace::from_point_direction(x, intersection(directions(list)));
}

IterationTrace simultaneous_affine(std::span<const AffineSubspace> list, const Vector& x0, int k_max)
{
    const double weight = 1.0 / static_cast<double>(list.size());
    auto step = [&](const Vector& x) {
        Vector next = Vector::Zero(x.size());
        for (const auto& v : list) {
            next += project_affine(v, x);
        }
        return Vector(weight * next);
    };
    return run_affine(list, x0, k_max, IterKind::simultaneous, step, "simultaneous_affine");
}

IterationTrace cyclic_affine(std::span<const AffineSubspace> list, const Vector& x0, int k_max)
{
    auto step = [&](const Vector& x) {
        Vector y = x;
        for (const auto& v : list) {
            y = project_affine(v, y);
        }
        return y;
    };
    return run_affine(list, x0, k_max, IterKind::cyclic, step, "cyclic_affine");
}

} // namespace projopt
