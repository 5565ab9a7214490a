#include "projopt/subspace.hpp"

#include "projopt/errors.hpp"

#include <string>

namespace projopt {

Subspace Subspace::from_spanning(const Matrix& vectors, const RankTolerance& tol)
{
    require_finite(vectors, "from_spanning");
    if (vectors.rows() == 0) {
        throw InputError("from_spanning: ambient dimension must be positive");
    }
    if (vectors.cols() == 0) {
        return trivial(vectors.rows());
    }
    // All-zero input has sigma_max = 0 and rank 0 under the absolute floor.
    return Subspace(orthonormal_basis(vectors, tol));
}

Subspace Subspace::from_orthonormal(Matrix basis)
{
    require_finite(basis, "from_orthonormal");
    if (basis.rows() == 0) {
        throw InputError("from_orthonormal: ambient dimension must be positive");
    }
    if (basis.cols() > basis.rows()) {
        throw InputError("from_orthonormal: more basis vectors than the ambient dimension");
    }
    if (basis.cols() > 0) {
        const Matrix gram = basis.transpose() * basis;
        const double defect = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
        if (defect > 1e-12) {
            throw InputError("from_orthonormal: columns are not orthonormal (defect " + format_residual(defect) +
                             ")");
        }
    }
    return Subspace(std::move(basis));
}

Subspace Subspace::trivial(Index ambient_dim)
{
    if (ambient_dim <= 0) {
        throw InputError("Subspace::trivial: ambient dimension must be positive");
    }
    return Subspace(Matrix(ambient_dim, 0));
}

Subspace Subspace::full(Index ambient_dim)
{
    if (ambient_dim <= 0) {
        throw InputError("Subspace::full: ambient dimension must be positive");
    }
    return Subspace(Matrix::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::transformed(const Matrix& q) const
{
    if (q.rows() != ambient_dim() || q.cols() != ambient_dim()) {
        throw InputError("Subspace::transformed: dimension mismatch");
    }
    return Subspace(q * basis_);
}

ProjectorOp::ProjectorOp(Matrix matrix) : matrix_(std::move(matrix))
{
    if (matrix_.rows() != matrix_.cols()) {
        throw InputError("ProjectorOp: matrix is not square");
    }
    require_finite(matrix_, "ProjectorOp");
}

Vector ProjectorOp::apply(const Vector& x) const
{
    if (x.size() != matrix_.cols()) {
        throw InputError("ProjectorOp::apply: dimension mismatch");
    }
    return matrix_ * x;
}

double ProjectorOp::symmetry_defect() const
{
    return spectral_norm(matrix_ - matrix_.transpose());
}

double ProjectorOp::idempotence_defect() const
{
    return spectral_norm(matrix_ * matrix_ - matrix_);
}

ProjectorOp projector(const Subspace& s)
{
    return ProjectorOp(s.basis() * s.basis().transpose());
}

Vector project(const Subspace& s, const Vector& x)
{
    if (x.size() != s.ambient_dim()) {
        throw InputError("project: vector has dimension " + std::to_string(x.size()) + ", subspace lives in R^" +
                         std::to_string(s.ambient_dim()));
    }
    require_finite(x, "project");
    // Q (Q^T x) keeps the cost at O(nd).
    return s.basis() * (s.basis().transpose() * x);
}

Index require_common_dim(std::span<const Subspace> list, const char* what)
{
    if (list.empty()) {
        throw InputError(std::string(what) + ": empty subspace list");
    }
    const Index n = list.front().ambient_dim();
    for (const auto& s : list) {
        if (s.ambient_dim() != n) {
            throw InputError(std::string(what) + ": subspaces live in different ambient dimensions");
        }
    }
    return n;
}

Subspace intersection(std::span<const Subspace> list, const RankTolerance& tol)
{
    const Index n = require_common_dim(list, "intersection");
    if (list.size() == 1) {
        return list.front();
    }
    const auto r = static_cast<Index>(list.size());
    Matrix stacked(r * n, n);
    for (Index i = 0; i < r; ++i) {
        const Matrix& q = list[static_cast<std::size_t>(i)].basis();
        stacked.middleRows(i * n, n) = Matrix::Identity(n, n) - q * q.transpose();
    }
    return Subspace::from_orthonormal(null_space(stacked, tol));
}

Subspace orth_complement(const Subspace& s)
{
    if (s.is_trivial()) {
        return Subspace::full(s.ambient_dim());
    }
    return Subspace::from_orthonormal(null_space(s.basis().transpose()));
}

double containment_defect(const Subspace& outer, const Subspace& inner)
{
    if (outer.ambient_dim() != inner.ambient_dim()) {
        throw InputError("containment_defect: dimension mismatch");
    }
    if (inner.is_trivial()) {
        return 0.0;
    }
    // ||(I - P_outer) Q_inner|| equals ||P_outer P_inner - P_inner||.
    const Matrix residual = inner.basis() - outer.basis() * (outer.basis().transpose() * inner.basis());
    return spectral_norm(residual);
}

Subspace reduced_component(const Subspace& mi, const Subspace& m)
{
    const double defect = containment_defect(mi, m);
    if (defect > kContainmentTol) {
        throw PreconditionError("reduced_component: M is not contained in M_i (defect " + format_residual(defect) +
                                ")");
    }
    if (mi.dim() == m.dim()) {
        return Subspace::trivial(mi.ambient_dim());
    }
    // With M ⊆ M_i, P_{M_i} - P_M is the projector onto M_i ∩ M^⊥.
    const Matrix diff = projector(mi).matrix() - projector(m).matrix();
    return Subspace::from_orthonormal(orthonormal_basis(diff, kProjectorRankTol));
}

double projector_distance(const Subspace& a, const Subspace& b)
{
    if (a.ambient_dim() != b.ambient_dim()) {
        throw InputError("projector_distance: dimension mismatch");
    }
    return spectral_norm(projector(a).matrix() - projector(b).matrix());
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol)
{
    return projector_distance(a, b) <= tol;
}

} // namespace projopt
