#pragma once

// Product-space model of the simultaneous projection method.
//
// For M_1..M_r in R^n let C = M_1 x ... x M_r and D = {(x, ..., x)} in R^{nr}.
// The averaged projection T = (1/r) sum P_{M_i} is then the compression of
// P_D P_C to the diagonal D.
//
// The natural inner product on the product space is the scaled one,
// <x, y>_r = (1/r) sum <x_i, y_i>. It is a constant multiple of the standard
// inner product of R^{nr}, so orthogonality, metric projections, angles and
// operator norms are the same under both. Everything in this module therefore
// uses the standard inner product; only vector norms are reported in the
// scaled form (see `scaled_norm`), which makes ||lift_diag(x)||_r = ||x||.

#include "projopt/projmethods.hpp"
#include "projopt/subspace.hpp"

#include <array>
#include <span>
#include <vector>

namespace projopt {

class ProductSpaceModel {
public:
    [[nodiscard]] Index base_dim() const { return base_dim_; }
    [[nodiscard]] Index factor_count() const { return factor_count_; }
    [[nodiscard]] Index product_dim() const { return base_dim_ * factor_count_; }
    /// C = M_1 x ... x M_r, block-diagonal basis.
    [[nodiscard]] const Subspace& product_set() const { return c_; }
    /// D = {(x, ..., x)}, basis columns (1/sqrt r)(e_j, ..., e_j).
    [[nodiscard]] const Subspace& diagonal() const { return d_; }

private:
    friend ProductSpaceModel build_product(std::span<const Subspace>);

    ProductSpaceModel(Index n, Index r, Subspace c, Subspace d)
        : base_dim_(n), factor_count_(r), c_(std::move(c)), d_(std::move(d))
    {
    }

    Index base_dim_;
    Index factor_count_;
    Subspace c_;
    Subspace d_;
};

/// Largest supported n * r; dense nr x nr matrices are formed.
inline constexpr Index kMaxProductDim = 2000;

[[nodiscard]] ProductSpaceModel build_product(std::span<const Subspace> list);

/// (x, ..., x).
[[nodiscard]] Vector lift_diag(const ProductSpaceModel& model, const Vector& x);
/// ||x||_r = ||x|| / sqrt(r).
[[nodiscard]] double scaled_norm(const ProductSpaceModel& model, const Vector& x);

/// cos(C, D), computed in R^{nr}.
[[nodiscard]] double cos_CD(const ProductSpaceModel& model);

/// The six members of the exact-norm chain for the simultaneous method at one k.
///   [0] ||T^k - P_M||                    T^k by repeated multiplication
///   [1] ||T - P_M||^k
///   [2] ((r-1)/r cos(M_1..M_r) + 1/r)^k  Gram route
///   [3] cos(C, D)^(2k)
///   [4] ||P_D P_C P_D - P_{C∩D}||^k
///   [5] ||(P_D P_C P_D)^k - P_{C∩D}||    repeated multiplication
struct NormChain {
    int k = 1;
    std::array<double, 6> members{};

    /// |members[i] - members[i+1]|, i = 0..4.
    [[nodiscard]] std::array<double, 5> residuals() const;
};

/// Chain members for k = 1..k_max. Each member is evaluated from its own
/// formula; the base-space members never touch the product space and vice
/// versa. Throws DegenerateInputError when every M_i equals M.
[[nodiscard]] std::vector<NormChain> norm_chain(std::span<const Subspace> list, int k_max);

/// The five adjacent residuals of the chain at k.
[[nodiscard]] std::array<double, 5> verify_norm_chain(std::span<const Subspace> list, int k);

/// ||(P_D P_C)^k lift(x) - lift(T^k x)||_r + ||P_{C∩D} lift(x) - lift(P_M x)||_r.
[[nodiscard]] double verify_pierra_lift(std::span<const Subspace> list, const Vector& x, int k);

/// The same residual for every k = 0..k_max along one trajectory.
[[nodiscard]] std::vector<double> verify_pierra_lift_range(std::span<const Subspace> list, const Vector& x, int k_max);

/// ||(P_D P_C P_D) lift(x) - lift(T x)||_r.
[[nodiscard]] double verify_compressed_step(std::span<const Subspace> list, const Vector& x);

/// Alternating projections between C and D started at lift(x0).
/// errors[k] = ||(P_D P_C)^k lift(x0) - P_{C∩D} lift(x0)||_r, which equals the
/// simultaneous-method error ||T^k x0 - P_M x0||; bounds[k] = cos(C, D)^(2k-1) ||x0||
/// for k >= 1, the bound obtained by applying the two-set result to C and D.
[[nodiscard]] IterationTrace product_alternating_trace(std::span<const Subspace> list, const Vector& x0, int k_max);

/// Four scalar forms of "the subspaces are not aligned"; all of them are < 1
/// exactly when one is.
struct AlignmentConditions {
    double friedrichs = 0.0;          ///< cos(M_1..M_r)
    double averaged_error_norm = 0.0; ///< ||(1/r) sum P_i - P_M||
    double product_error_norm = 0.0;  ///< ||P_D P_C - P_{C∩D}||
    double cos_cd = 0.0;              ///< cos(C, D)

    [[nodiscard]] bool all_below_one() const;
};

[[nodiscard]] AlignmentConditions alignment_conditions(std::span<const Subspace> list);

} // namespace projopt
