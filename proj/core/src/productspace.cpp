#include "projopt/productspace.hpp"

#include "projopt/angles.hpp"
#include "projopt/errors.hpp"
#include "projopt/projmethods.hpp"

#include <cmath>
#include <string>

namespace projopt {

namespace {

struct ProductProjectors {
    Matrix pc;
    Matrix pd;
    Matrix pcd;
};

ProductProjectors product_projectors(const ProductSpaceModel& model)
{
    const Subspace pair[] = {model.product_set(), model.diagonal()};
    return ProductProjectors{projector(model.product_set()).matrix(), projector(model.diagonal()).matrix(),
                             projector(intersection(pair)).matrix()};
}

Matrix averaged_projection(std::span<const Subspace> list)
{
    const Index n = list.front().ambient_dim();
    Matrix t = Matrix::Zero(n, n);
    for (const auto& s : list) {
        t.noalias() += s.basis() * s.basis().transpose();
    }
    return t / static_cast<double>(list.size());
}

void require_product_input(std::span<const Subspace> list, const char* what)
{
    if (list.size() < 2) {
        throw InputError(std::string(what) + ": need at least two subspaces");
    }
    require_common_dim(list, what);
}

} // namespace

ProductSpaceModel build_product(std::span<const Subspace> list)
{
    require_product_input(list, "build_product");
    const Index n = list.front().ambient_dim();
    const auto r = static_cast<Index>(list.size());
    if (n * r > kMaxProductDim) {
        throw InputError("build_product: product dimension " + std::to_string(n * r) + " exceeds " +
                         std::to_string(kMaxProductDim));
    }

    Index total = 0;
    for (const auto& s : list) {
        total += s.dim();
    }
    Matrix c_basis = Matrix::Zero(n * r, total);
    Index col = 0;
    for (Index i = 0; i < r; ++i) {
        const Subspace& s = list[static_cast<std::size_t>(i)];
        c_basis.block(i * n, col, n, s.dim()) = s.basis();
        col += s.dim();
    }

    Matrix d_basis(n * r, n);
    const double w = 1.0 / std::sqrt(static_cast<double>(r));
    for (Index i = 0; i < r; ++i) {
        d_basis.middleRows(i * n, n) = w * Matrix::Identity(n, n);
    }

    return ProductSpaceModel(n, r, Subspace::from_orthonormal(std::move(c_basis)),
                             Subspace::from_orthonormal(std::move(d_basis)));
}

Vector lift_diag(const ProductSpaceModel& model, const Vector& x)
{
    if (x.size() != model.base_dim()) {
        throw InputError("lift_diag: vector has dimension " + std::to_string(x.size()) + ", expected " +
                         std::to_string(model.base_dim()));
    }
    return x.replicate(model.factor_count(), 1);
}

double scaled_norm(const ProductSpaceModel& model, const Vector& x)
{
    if (x.size() != model.product_dim()) {
        throw InputError("scaled_norm: dimension mismatch");
    }
    return x.norm() / std::sqrt(static_cast<double>(model.factor_count()));
}

double cos_CD(const ProductSpaceModel& model)
{
    return cos_two(model.product_set(), model.diagonal()).value;
}

std::array<double, 5> NormChain::residuals() const
{
    std::array<double, 5> out{};
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::abs(members[i] - members[i + 1]);
    }
    return out;
}

std::vector<NormChain> norm_chain(std::span<const Subspace> list, int k_max)
{
    require_product_input(list, "norm_chain");
    if (k_max < 1) {
        throw InputError("norm_chain: k must be at least 1");
    }
    const ReducedFamily family = reduce_family(list);
    if (family.all_trivial()) {
        throw DegenerateInputError("norm_chain: every subspace equals the intersection; all members vanish");
    }
    const auto r = static_cast<double>(list.size());

    // Base space, direct powers.
    const Matrix t = averaged_projection(list);
    const Matrix pm = projector(intersection(list)).matrix();

    // Base space, single step through the iteration operator.
    const double step_norm = spectral_norm(simultaneous_operator(list).deviation());

    // Friedrichs number through the Gram route.
    const double q = (r - 1.0) / r * friedrichs_gram(family).value + 1.0 / r;

    // Product space.
    const ProductSpaceModel model = build_product(list);
    const double cos_cd = cos_CD(model);
    const ProductProjectors pp = product_projectors(model);
    const Matrix compressed = pp.pd * pp.pc * pp.pd;
    const double compressed_step_norm = spectral_norm(compressed - pp.pcd);

    std::vector<NormChain> chain;
    chain.reserve(static_cast<std::size_t>(k_max));
    Matrix t_power = t;
    Matrix compressed_power = compressed;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) {
            t_power = t_power * t;
            compressed_power = compressed_power * compressed;
        }
        NormChain link;
        link.k = k;
        link.members[0] = spectral_norm(t_power - pm);
        link.members[1] = std::pow(step_norm, k);
        link.members[2] = std::pow(q, k);
        link.members[3] = std::pow(cos_cd, 2 * k);
        link.members[4] = std::pow(compressed_step_norm, k);
        link.members[5] = spectral_norm(compressed_power - pp.pcd);
        chain.push_back(link);
    }
    return chain;
}

std::array<double, 5> verify_norm_chain(std::span<const Subspace> list, int k)
{
    if (k < 1) {
        throw InputError("verify_norm_chain: k must be at least 1");
    }
    return norm_chain(list, k).back().residuals();
}

std::vector<double> verify_pierra_lift_range(std::span<const Subspace> list, const Vector& x, int k_max)
{
    require_product_input(list, "verify_pierra_lift");
    if (k_max < 0) {
        throw InputError("verify_pierra_lift: k must be non-negative");
    }
    const ProductSpaceModel model = build_product(list);
    const Vector lifted = lift_diag(model, x);
    const ProductProjectors pp = product_projectors(model);

    const Vector pm_x = project(intersection(list), x);
    const double limit_gap = scaled_norm(model, pp.pcd * lifted - lift_diag(model, pm_x));

    const Matrix t = averaged_projection(list);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k_max) + 1);
    Vector product_iterate = lifted;
    Vector base_iterate = x;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            product_iterate = pp.pd * (pp.pc * product_iterate);
            base_iterate = t * base_iterate;
        }
        out.push_back(scaled_norm(model, product_iterate - lift_diag(model, base_iterate)) + limit_gap);
    }
    return out;
}

double verify_pierra_lift(std::span<const Subspace> list, const Vector& x, int k)
{
    return verify_pierra_lift_range(list, x, k).back();
}

double verify_compressed_step(std::span<const Subspace> list, const Vector& x)
{
    require_product_input(list, "verify_compressed_step");
    const ProductSpaceModel model = build_product(list);
    const Vector lifted = lift_diag(model, x);
    const ProductProjectors pp = product_projectors(model);
    const Vector stepped = pp.pd * (pp.pc * (pp.pd * lifted));
    return scaled_norm(model, stepped - lift_diag(model, averaged_projection(list) * x));
}

IterationTrace product_alternating_trace(std::span<const Subspace> list, const Vector& x0, int k_max)
{
    require_product_input(list, "product_alternating_trace");
    if (k_max < 0) {
        throw InputError("product_alternating_trace: k_max must be non-negative");
    }
    const ProductSpaceModel model = build_product(list);
    const Vector lifted = lift_diag(model, x0);
    const ProductProjectors pp = product_projectors(model);
    const double cos_cd = cos_CD(model);

    IterationTrace trace;
    trace.start = x0;
    const Vector limit = pp.pcd * lifted;
    Vector x = lifted;
    const double scale = x0.norm();
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            x = pp.pd * (pp.pc * x);
        }
        trace.errors.push_back(scaled_norm(model, x - limit));
        trace.bounds.push_back(k == 0 ? scale : std::pow(cos_cd, 2 * k - 1) * scale);
    }
    return trace;
}

bool AlignmentConditions::all_below_one() const
{
    return friedrichs < 1.0 && averaged_error_norm < 1.0 && product_error_norm < 1.0 && cos_cd < 1.0;
}

AlignmentConditions alignment_conditions(std::span<const Subspace> list)
{
    require_product_input(list, "alignment_conditions");
    AlignmentConditions out;
    out.friedrichs = friedrichs_gram(list).raw;
    out.averaged_error_norm = spectral_norm(simultaneous_operator(list).deviation());
    const ProductSpaceModel model = build_product(list);
    const ProductProjectors pp = product_projectors(model);
    out.product_error_norm = spectral_norm(pp.pd * pp.pc - pp.pcd);
    out.cos_cd = cos_CD(model);
    return out;
}

} // namespace projopt
