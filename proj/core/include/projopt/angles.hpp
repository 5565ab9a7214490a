#pragma once

// Friedrichs numbers. Three independent routes:
//
//   principal_angle  two subspaces only: largest cosine of the principal angles
//                    between the reduced components M_i ∩ M^⊥.
//   gram_block       any r >= 2: the supremum of ||sum x_i||^2 / (r sum ||x_i||^2)
//                    over x_i ∈ M_i ∩ M^⊥ is lambda_max(G) / r, where G is the
//                    block Gram matrix of orthonormal bases of the reduced
//                    components; the Friedrichs number is (lambda_max(G) - 1) / (r - 1).
//   norm_inversion   any r >= 2: nu = ||(1/r) sum P_i - P_M|| satisfies
//                    nu = ((r - 1) cos + 1) / r, solved for cos.
//
// gram_block is the reference route; norm_inversion is kept as a cross-check.
//
// When every M_i equals M the supremum runs over an empty set. We report 0 and
// set `degenerate`, except on the norm_inversion route, which refuses such
// input because nu = 0 does not satisfy the relation above.

#include "projopt/subspace.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace projopt {

enum class FriedrichsRoute { gram_block, norm_inversion, principal_angle };

[[nodiscard]] std::string_view to_string(FriedrichsRoute route);

struct FriedrichsResult {
    double value = 0.0;      ///< clamped to [0, 1]
    bool degenerate = false; ///< all reduced components trivial
    FriedrichsRoute route = FriedrichsRoute::gram_block;
    double raw = 0.0;        ///< value before clamping
};

/// Intersection M and the reduced components M_i ∩ M^⊥ of a family.
struct ReducedFamily {
    Subspace intersection;
    std::vector<Subspace> components;

    [[nodiscard]] bool all_trivial() const;
};

[[nodiscard]] ReducedFamily reduce_family(std::span<const Subspace> list);

/// Cosine of the Friedrichs angle between two subspaces.
[[nodiscard]] FriedrichsResult cos_two(const Subspace& m1, const Subspace& m2);

/// Friedrichs number of r >= 2 subspaces via the block Gram matrix.
[[nodiscard]] FriedrichsResult friedrichs_gram(std::span<const Subspace> list);
[[nodiscard]] FriedrichsResult friedrichs_gram(const ReducedFamily& family);

/// Friedrichs number recovered from ||(1/r) sum P_i - P_M||.
/// Throws DegenerateInputError when every M_i equals M.
[[nodiscard]] FriedrichsResult friedrichs_from_norm(std::span<const Subspace> list);

} // namespace projopt
