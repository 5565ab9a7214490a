#pragma once

#include "projopt/numlin.hpp"

#include <cstdint>
#include <random>

namespace projopt {

/// Seeded generator with deterministic splitting.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard; uniform and normal variates are derived here rather than through
/// the <random> distributions so that the streams are identical across
/// standard-library implementations. `split(i)` derives a child from the seed
/// alone, never from the engine state, so work may be handed out to threads in
/// any order without changing results.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] Rng split(std::uint64_t stream) const;

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer on [lo, hi].
    int uniform_int(int lo, int hi);
    /// Standard normal (Marsaglia polar method).
    double normal();

    Matrix gaussian(Index rows, Index cols);
    /// Uniformly distributed point on the unit sphere of R^n.
    Vector unit_vector(Index n);
    /// Haar-distributed orthogonal n x n matrix.
    Matrix random_orthogonal(Index n);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace projopt
