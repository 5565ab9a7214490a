#include "projopt/generators.hpp"

#include "projopt/rng.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace projopt {

namespace {

std::vector<Check> all_checks(std::size_t r)
{
    if (r == 2) {
        return {Check::norm_chain, Check::kw,     Check::lemma_identity, Check::pierra_lift,
                Check::compare,    Check::bounds, Check::routes,         Check::alignment};
    }
    return {Check::norm_chain, Check::lemma_identity, Check::pierra_lift, Check::bounds, Check::routes,
            Check::alignment};
}

} // namespace

Scenario generate_two_subspace(double theta_deg, Index ambient_dim, Index shared_dim, std::uint64_t seed)
{
    if (!(theta_deg > 0.0 && theta_deg <= 90.0)) {
        throw InputError(fmt::format("generate_two_subspace: theta must lie in (0, 90], got {}", theta_deg));
    }
    if (shared_dim < 0 || ambient_dim < shared_dim + 2) {
        throw InputError(fmt::format("generate_two_subspace: need ambient_dim >= shared_dim + 2 (n = {}, s = {})",
                                     ambient_dim, shared_dim));
    }
    const double theta = theta_deg * std::numbers::pi / 180.0;
    const Index s = shared_dim;

    // Canonical frame: M = span(e_1..e_s), reduced components span(e_{s+1})
    // and span(cos θ e_{s+1} + sin θ e_{s+2}).
    Matrix first = Matrix::Zero(ambient_dim, s + 1);
    Matrix second = Matrix::Zero(ambient_dim, s + 1);
    for (Index j = 0; j < s; ++j) {
        first(j, j) = 1.0;
        second(j, j) = 1.0;
    }
    first(s, s) = 1.0;
    second(s, s) = std::cos(theta);
    second(s + 1, s) = std::sin(theta);

    Rng rng(seed);
    const Matrix rotation = rng.random_orthogonal(ambient_dim);

    Scenario out;
    out.name = fmt::format("two_subspace_theta{}_n{}_s{}_seed{}", theta_deg, ambient_dim, shared_dim, seed);
    out.ambient_dim = ambient_dim;
    out.mode = Mode::linear;
    out.method = Method::simultaneous;
    out.k_max = 10;
    out.subspaces = {SubspaceSpec{rotation * first, std::nullopt}, SubspaceSpec{rotation * second, std::nullopt}};
    out.starts = RandomStarts{3, seed};
    out.checks = all_checks(2);
    out.validate();
    return out;
}

Scenario generate_random(Index ambient_dim, std::span<const Index> dims, std::uint64_t seed, Index shared_dim)
{
    if (dims.size() < 2) {
        throw InputError("generate_random: need at least two subspaces");
    }
    if (ambient_dim < 1) {
        throw InputError("generate_random: ambient_dim must be positive");
    }
    for (Index d : dims) {
        if (d < 0 || d > ambient_dim) {
            throw InputError(fmt::format("generate_random: dimension {} outside [0, {}]", d, ambient_dim));
        }
        if (d < shared_dim) {
            throw InputError("generate_random: shared_dim exceeds a subspace dimension");
        }
    }
    if (shared_dim < 0) {
        throw InputError("generate_random: shared_dim must be non-negative");
    }

    const Rng base(seed);
    Rng shared_stream = base.split(0);
    const Matrix shared = shared_stream.gaussian(ambient_dim, shared_dim);

    Scenario out;
    out.name = fmt::format("random_r{}_n{}_seed{}", dims.size(), ambient_dim, seed);
    out.ambient_dim = ambient_dim;
    out.mode = Mode::linear;
    out.method = Method::simultaneous;
    out.k_max = 10;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        Rng stream = base.split(i + 1);
        Matrix spanning(ambient_dim, dims[i]);
        spanning.leftCols(shared_dim) = shared;
        spanning.rightCols(dims[i] - shared_dim) = stream.gaussian(ambient_dim, dims[i] - shared_dim);
        out.subspaces.push_back(SubspaceSpec{std::move(spanning), std::nullopt});
    }
    out.starts = RandomStarts{3, seed};
    out.checks = all_checks(dims.size());
    out.validate();
    return out;
}

Scenario generate_verify_instance(std::uint64_t seed, std::uint64_t index)
{
    Rng rng = Rng(seed).split(index);
    const int r = rng.uniform_int(2, 5);
    const int n = rng.uniform_int(2, 30);
    const int k_max = rng.uniform_int(1, 10);
    const int shape = rng.uniform_int(0, 19);
    const std::uint64_t instance_seed = rng.next_u64() >> 1;

    Scenario out;
    if (shape == 0) {
        // degenerate: r different spanning sets of one subspace
        const int d = rng.uniform_int(1, n);
        const Matrix frame = rng.gaussian(n, d);
        out.ambient_dim = n;
        out.mode = Mode::linear;
        out.k_max = 10;
        for (int i = 0; i < r; ++i) {
            out.subspaces.push_back(SubspaceSpec{frame * rng.gaussian(d, d), std::nullopt});
        }
        out.checks = all_checks(static_cast<std::size_t>(r));
    } else {
        // shapes 1..9 independent; 10..19 with a planted common part
        const int shared = (shape >= 10 && n >= 3) ? rng.uniform_int(1, n - 2) : 0;
        std::vector<Index> dims;
        for (int i = 0; i < r; ++i) {
            dims.push_back(rng.uniform_int(std::max(shared, 1), n));
        }
        out = generate_random(n, dims, instance_seed, shared);
    }
    out.name = fmt::format("verify_{}_{}", seed, index);
    out.k_max = k_max;
    out.method = rng.uniform_int(0, 1) == 0 ? Method::simultaneous : Method::cyclic;
    out.starts = RandomStarts{3, instance_seed};
    out.validate();
    return out;
}

} // namespace projopt
