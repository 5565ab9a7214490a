#include "projopt/numlin.hpp"

#include "projopt/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace projopt {

namespace {

using Svd = Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner>;

Index rank_from_singular_values(const Vector& sv, Index rows, Index cols, const RankTolerance& tol)
{
    if (sv.size() == 0) {
        return 0;
    }
    const double cut = tol.threshold(rows, cols, sv(0));
    Index rank = 0;
    // singular values come sorted in decreasing order
    while (rank < sv.size() && sv(rank) > cut) {
        ++rank;
    }
    return rank;
}

} // namespace

double RankTolerance::threshold(Index rows, Index cols, double sigma_max) const
{
    const double scaled = static_cast<double>(std::max(rows, cols)) * relative_eps * sigma_max;
    return std::max(scaled, absolute_floor);
}

void require_finite(const Matrix& a, std::string_view what)
{
    if (!a.allFinite()) {
        throw InputError(std::string(what) + ": matrix has non-finite entries");
    }
}

void require_finite(const Vector& v, std::string_view what)
{
    if (!v.allFinite()) {
        throw InputError(std::string(what) + ": vector has non-finite entries");
    }
}

Matrix orthonormal_basis(const Matrix& a, const RankTolerance& tol)
{
    if (a.rows() == 0) {
        throw InputError("orthonormal_basis: matrix has no rows");
    }
    require_finite(a, "orthonormal_basis");
    if (a.cols() == 0) {
        return Matrix(a.rows(), 0);
    }
    const Svd svd(a, Eigen::ComputeThinU);
    const Index rank = rank_from_singular_values(svd.singularValues(), a.rows(), a.cols(), tol);
    return svd.matrixU().leftCols(rank);
}

Matrix null_space(const Matrix& a, const RankTolerance& tol)
{
    if (a.cols() == 0) {
        throw InputError("null_space: matrix has no columns");
    }
    require_finite(a, "null_space");
    if (a.rows() == 0) {
        return Matrix::Identity(a.cols(), a.cols());
    }
    const Svd svd(a, Eigen::ComputeFullV);
    const Index rank = rank_from_singular_values(svd.singularValues(), a.rows(), a.cols(), tol);
    return svd.matrixV().rightCols(a.cols() - rank);
}

Index numerical_rank(const Matrix& a, const RankTolerance& tol)
{
    require_finite(a, "numerical_rank");
    if (a.size() == 0) {
        return 0;
    }
    const Svd svd(a);
    return rank_from_singular_values(svd.singularValues(), a.rows(), a.cols(), tol);
}

double spectral_norm(const Matrix& a)
{
    require_finite(a, "spectral_norm");
    if (a.size() == 0) {
        return 0.0;
    }
    const Svd svd(a);
    return svd.singularValues()(0);
}

Vector top_right_singular_vector(const Matrix& a)
{
    require_finite(a, "top_right_singular_vector");
    if (a.cols() == 0) {
        throw InputError("top_right_singular_vector: matrix has no columns");
    }
    if (a.rows() == 0 || a.isZero(0.0)) {
        return Vector::Unit(a.cols(), 0);
    }
    const Svd svd(a, Eigen::ComputeFullV);
    return svd.matrixV().col(0);
}

double largest_eigenvalue_symmetric(const Matrix& a)
{
    if (a.rows() != a.cols()) {
        throw InputError("largest_eigenvalue_symmetric: matrix is not square");
    }
    require_finite(a, "largest_eigenvalue_symmetric");
    if (a.size() == 0) {
        throw InputError("largest_eigenvalue_symmetric: empty matrix");
    }
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
    // ascending order
    return eig.eigenvalues()(eig.eigenvalues().size() - 1);
}

Matrix matrix_power(const Matrix& a, int k)
{
    if (a.rows() != a.cols()) {
        throw InputError("matrix_power: matrix is not square");
    }
    if (k < 0) {
        throw InputError("matrix_power: negative exponent");
    }
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix base = a;
    while (k > 0) {
        if (k & 1) {
            result = result * base;
        }
        k >>= 1;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

} // namespace projopt
