#pragma once

// Dense linear-algebra kernel shared by every other module. All routines are
// pure functions; the Eigen decompositions used underneath are single-threaded
// and reduce in a fixed order, so results are bit-reproducible.

#include <Eigen/Dense>

#include <string_view>

namespace projopt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Singular-value cut-off used for every numerical rank decision.
///
/// The effective threshold for a matrix A is
///   max(max(rows, cols) * relative_eps * sigma_max(A), absolute_floor).
struct RankTolerance {
    double relative_eps = 1e-12;
    double absolute_floor = 1e-14;

    [[nodiscard]] double threshold(Index rows, Index cols, double sigma_max) const;
};

/// Throws InputError when any entry of `a` is NaN or infinite.
void require_finite(const Matrix& a, std::string_view what);
void require_finite(const Vector& v, std::string_view what);

/// Orthonormal basis of the column space of `a`. The number of columns is the
/// numerical rank of `a` under `tol`; no sign or rotation convention is imposed.
[[nodiscard]] Matrix orthonormal_basis(const Matrix& a, const RankTolerance& tol = {});

/// Orthonormal basis of {x : a x = 0}; zero columns when the kernel is trivial.
[[nodiscard]] Matrix null_space(const Matrix& a, const RankTolerance& tol = {});

/// Numerical rank of `a` under `tol`.
[[nodiscard]] Index numerical_rank(const Matrix& a, const RankTolerance& tol = {});

/// Largest singular value (the operator 2-norm). Zero for empty matrices.
[[nodiscard]] double spectral_norm(const Matrix& a);

/// Unit right singular vector belonging to the largest singular value, i.e. a
/// unit x with ||a x|| = ||a||. Returns e_1 when `a` is zero.
[[nodiscard]] Vector top_right_singular_vector(const Matrix& a);

/// Largest eigenvalue of a symmetric matrix (only the lower triangle is read).
[[nodiscard]] double largest_eigenvalue_symmetric(const Matrix& a);

/// a^k by binary powering, k >= 0.
[[nodiscard]] Matrix matrix_power(const Matrix& a, int k);

} // namespace projopt
