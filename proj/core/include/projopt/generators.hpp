#pragma once

// Seeded instance generators with prescribed geometry.

#include "projopt/scenario.hpp"

#include <cstdint>
#include <span>

namespace projopt {

/// Two subspaces of dimension s + 1 in R^n sharing an s-dimensional part and
/// meeting at Friedrichs angle theta_deg, conjugated by a seeded random
/// rotation. Requires 0 < theta_deg <= 90 and n >= s + 2.
[[nodiscard]] Scenario generate_two_subspace(double theta_deg, Index ambient_dim, Index shared_dim,
                                             std::uint64_t seed);

/// r subspaces spanned by seeded Gaussian vectors, dims[i] vectors each. With
/// shared_dim > 0 the first shared_dim spanning vectors of every subspace are
/// a common random frame, so the intersection has at least that dimension.
[[nodiscard]] Scenario generate_random(Index ambient_dim, std::span<const Index> dims, std::uint64_t seed,
                                       Index shared_dim = 0);

/// Instance `index` of the verification suite drawn from `seed`:
/// r in [2, 5], n in [2, 30], k_max in [1, 10], with every check enabled.
[[nodiscard]] Scenario generate_verify_instance(std::uint64_t seed, std::uint64_t index);

} // namespace projopt
