#pragma once

#include "projopt/numlin.hpp"

#include <span>
#include <vector>

namespace projopt {

/// Closed linear subspace of R^n stored as an n x d matrix with orthonormal
/// columns. The trivial subspace {0} has d = 0 and is an ordinary value.
///
/// Bases are not canonical; compare subspaces with `same_subspace`, which works
/// on projectors.
class Subspace {
public:
    /// Span of the columns of `vectors` (n x m, m may be 0).
    static Subspace from_spanning(const Matrix& vectors, const RankTolerance& tol = {});
    /// Adopts `basis` as is; its columns must be orthonormal to 1e-12.
    static Subspace from_orthonormal(Matrix basis);
    static Subspace trivial(Index ambient_dim);
    static Subspace full(Index ambient_dim);

    [[nodiscard]] Index ambient_dim() const { return basis_.rows(); }
    [[nodiscard]] Index dim() const { return basis_.cols(); }
    [[nodiscard]] bool is_trivial() const { return basis_.cols() == 0; }
    [[nodiscard]] const Matrix& basis() const { return basis_; }

    /// Image under the orthogonal map `q` (n x n).
    [[nodiscard]] Subspace transformed(const Matrix& q) const;

private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}

    Matrix basis_;
};

/// Dense matrix of an orthogonal (metric) projection P_M.
class ProjectorOp {
public:
    explicit ProjectorOp(Matrix matrix);

    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] Index dim() const { return matrix_.rows(); }
    [[nodiscard]] Vector apply(const Vector& x) const;

    /// ||P - P^T||, ||P^2 - P|| and ||P||; used by the invariant checks.
    [[nodiscard]] double symmetry_defect() const;
    [[nodiscard]] double idempotence_defect() const;

private:
    Matrix matrix_;
};

/// Containment tolerance for M ⊆ M_i checks and projector-level equality.
inline constexpr double kContainmentTol = 1e-10;

/// Rank cut for matrices built from projectors, whose nonzero singular values
/// are O(1) even when the matrix itself is rounding noise.
inline constexpr RankTolerance kProjectorRankTol{1e-12, 1e-10};

[[nodiscard]] ProjectorOp projector(const Subspace& s);
[[nodiscard]] Vector project(const Subspace& s, const Vector& x);

/// {x : P_i x = x for all i}, from the null space of the stacked (I - P_i).
[[nodiscard]] Subspace intersection(std::span<const Subspace> list,
                                    const RankTolerance& tol = kProjectorRankTol);
[[nodiscard]] Subspace orth_complement(const Subspace& s);

/// M_i ∩ M^⊥ for M ⊆ M_i. Throws PreconditionError when the containment fails.
[[nodiscard]] Subspace reduced_component(const Subspace& mi, const Subspace& m);

/// ||P_a - P_b||.
[[nodiscard]] double projector_distance(const Subspace& a, const Subspace& b);
[[nodiscard]] bool same_subspace(const Subspace& a, const Subspace& b, double tol = kContainmentTol);
/// ||P_outer P_inner - P_inner||, zero iff inner ⊆ outer.
[[nodiscard]] double containment_defect(const Subspace& outer, const Subspace& inner);

/// Throws InputError unless `list` is nonempty with a common ambient dimension.
Index require_common_dim(std::span<const Subspace> list, const char* what);

} // namespace projopt
