#include "projopt/angles.hpp"

#include "projopt/errors.hpp"

#include <algorithm>

namespace projopt {

namespace {

FriedrichsResult make_result(double raw, FriedrichsRoute route)
{
    return FriedrichsResult{std::clamp(raw, 0.0, 1.0), false, route, raw};
}

FriedrichsResult degenerate_result(FriedrichsRoute route)
{
    return FriedrichsResult{0.0, true, route, 0.0};
}

void require_at_least_two(std::span<const Subspace> list, const char* what)
{
    if (list.size() < 2) {
        throw InputError(std::string(what) + ": need at least two subspaces");
    }
}

} // namespace

std::string_view to_string(FriedrichsRoute route)
{
    switch (route) {
    case FriedrichsRoute::gram_block:
        return "gram_block";
    case FriedrichsRoute::norm_inversion:
        return "norm_inversion";
    case FriedrichsRoute::principal_angle:
        return "principal_angle";
    }
    return "unknown";
}

bool ReducedFamily::all_trivial() const
{
    return std::all_of(components.begin(), components.end(), [](const Subspace& s) { return s.is_trivial(); });
}

ReducedFamily reduce_family(std::span<const Subspace> list)
{
    ReducedFamily family{intersection(list), {}};
    family.components.reserve(list.size());
    for (const auto& mi : list) {
        family.components.push_back(reduced_component(mi, family.intersection));
    }
    return family;
}

FriedrichsResult cos_two(const Subspace& m1, const Subspace& m2)
{
    if (m1.ambient_dim() != m2.ambient_dim()) {
        throw InputError("cos_two: subspaces live in different ambient dimensions");
    }
    const Subspace pair[] = {m1, m2};
    const ReducedFamily family = reduce_family(pair);
    const Subspace& r1 = family.components[0];
    const Subspace& r2 = family.components[1];
    if (r1.is_trivial() || r2.is_trivial()) {
        return degenerate_result(FriedrichsRoute::principal_angle);
    }
    // Singular values of Q1^T Q2 are the cosines of the principal angles.
    const Matrix cross = r1.basis().transpose() * r2.basis();
    return make_result(spectral_norm(cross), FriedrichsRoute::principal_angle);
}

FriedrichsResult friedrichs_gram(const ReducedFamily& family)
{
    const auto r = static_cast<double>(family.components.size());
    if (family.components.size() < 2) {
        throw InputError("friedrichs_gram: need at least two subspaces");
    }
    if (family.all_trivial()) {
        return degenerate_result(FriedrichsRoute::gram_block);
    }
    Index total = 0;
    for (const auto& c : family.components) {
        total += c.dim();
    }
    const Index n = family.intersection.ambient_dim();
    Matrix stacked(n, total);
    Index offset = 0;
    for (const auto& c : family.components) {
        stacked.middleCols(offset, c.dim()) = c.basis();
        offset += c.dim();
    }
    // G = [Q_i^T Q_j]; diagonal blocks are identities.
    const Matrix gram = stacked.transpose() * stacked;
    const double lambda = largest_eigenvalue_symmetric(gram);
    return make_result((lambda - 1.0) / (r - 1.0), FriedrichsRoute::gram_block);
}

FriedrichsResult friedrichs_gram(std::span<const Subspace> list)
{
    require_at_least_two(list, "friedrichs_gram");
    require_common_dim(list, "friedrichs_gram");
    return friedrichs_gram(reduce_family(list));
}

FriedrichsResult friedrichs_from_norm(std::span<const Subspace> list)
{
    require_at_least_two(list, "friedrichs_from_norm");
    const Index n = require_common_dim(list, "friedrichs_from_norm");
    const Subspace m = intersection(list);
    const bool degenerate =
        std::all_of(list.begin(), list.end(), [&](const Subspace& s) { return s.dim() == m.dim(); });
    if (degenerate) {
        throw DegenerateInputError(
            "friedrichs_from_norm: every subspace equals the intersection; the norm relation cannot be inverted");
    }
    const auto r = static_cast<double>(list.size());
    Matrix averaged = Matrix::Zero(n, n);
    for (const auto& s : list) {
        averaged += projector(s).matrix();
    }
    averaged /= r;
    const double nu = spectral_norm(averaged - projector(m).matrix());
    return make_result((r * nu - 1.0) / (r - 1.0), FriedrichsRoute::norm_inversion);
}

} // namespace projopt
