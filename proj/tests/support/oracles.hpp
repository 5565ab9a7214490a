#pragma once

// Reference computations for the tests. Everything here goes through a code
// path the library does not use (normal equations, BDCSVD, power iteration,
// Householder QR), so agreement with the library is a real cross-check.

#include "projopt/numlin.hpp"
#include "projopt/subspace.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using projopt::Index;
using projopt::Matrix;
using projopt::Vector;

inline constexpr double kPi = std::numbers::pi;

// P = A (A^T A)^{-1} A^T for A with independent columns.
inline Matrix projector_normal_eq(const Matrix& a)
{
    const Matrix gram = a.transpose() * a;
    return a * gram.ldlt().solve(a.transpose());
}

// Largest singular value by power iteration on A^T A.
inline double power_norm(const Matrix& a, int iters = 3000)
{
    if (a.size() == 0) {
        return 0.0;
    }
    const Matrix ata = a.transpose() * a;
    Vector v = Vector::Ones(ata.cols()) / std::sqrt(static_cast<double>(ata.cols()));
    // Perturb away from any symmetric starting subspace.
    for (Index i = 0; i < v.size(); ++i) {
        v(i) += 1e-3 * static_cast<double>(i % 7);
    }
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        Vector w = ata * v;
        const double nw = w.norm();
        if (nw == 0.0) {
            return 0.0;
        }
        lambda = v.dot(w);
        v = w / nw;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

inline double bdc_norm(const Matrix& a)
{
    if (a.size() == 0) {
        return 0.0;
    }
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

// Unit vector of the line through the origin at angle theta (radians) in R^2.
inline Matrix line(double theta)
{
    Matrix u(2, 1);
    u << std::cos(theta), std::sin(theta);
    return u;
}

inline Matrix axis(Index n, Index j)
{
    Matrix e = Matrix::Zero(n, 1);
    e(j, 0) = 1.0;
    return e;
}

// Orthonormal n x d basis of a random subspace, via Householder QR.
inline Matrix random_basis(std::mt19937_64& gen, Index n, Index d)
{
    std::normal_distribution<double> nd;
    Matrix g(n, d);
    for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < n; ++i) {
            g(i, j) = nd(gen);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(n, d);
}

inline Vector random_vector(std::mt19937_64& gen, Index n)
{
    std::normal_distribution<double> nd;
    Vector v(n);
    for (Index i = 0; i < n; ++i) {
        v(i) = nd(gen);
    }
    return v;
}

// Principal-angle cosines between span(q1) and span(q2), descending.
inline std::vector<double> principal_cosines(const Matrix& q1, const Matrix& q2)
{
    if (q1.cols() == 0 || q2.cols() == 0) {
        return {};
    }
    Eigen::BDCSVD<Matrix> svd(q1.transpose() * q2);
    const Vector s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

// Friedrichs cosine of a generic pair whose intersection has dimension
// `common`: the largest principal cosine after the `common` unit ones.
inline double friedrichs_two(const Matrix& q1, const Matrix& q2, Index common)
{
    const auto c = principal_cosines(q1, q2);
    const auto idx = static_cast<std::size_t>(common);
    return idx < c.size() ? c[idx] : 0.0;
}

// Random pair in R^n of dims d1, d2 sharing exactly `common` directions.
struct Pair {
    Matrix q1;
    Matrix q2;
    Index common;
};

inline Pair random_pair(std::mt19937_64& gen, Index n, Index d1, Index d2, Index common)
{
    const Matrix frame = random_basis(gen, n, n);
    const Matrix shared = frame.leftCols(common);
    const Matrix rest = frame.rightCols(n - common);
    // Private parts live in the orthogonal complement of the shared frame.
    const Matrix a = rest * random_basis(gen, n - common, d1 - common);
    const Matrix b = rest * random_basis(gen, n - common, d2 - common);
    Matrix q1(n, d1);
    q1 << shared, a;
    Matrix q2(n, d2);
    q2 << shared, b;
    return {q1, q2, common};
}

} // namespace oracle
