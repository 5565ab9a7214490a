#include "projopt/projmethods.hpp"

#include "projopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace projopt {

namespace {

void require_positive_k(int k, const char* what)
{
    if (k < 1) {
        throw InputError(std::string(what) + ": k must be at least 1");
    }
}

void require_pair_or_more(std::span<const Subspace> list, const char* what)
{
    if (list.size() < 2) {
        throw InputError(std::string(what) + ": need at least two subspaces");
    }
    require_common_dim(list, what);
}

// Norm of P_{M_r ∩ M^⊥} ... P_{M_1 ∩ M^⊥}.
double reduced_product_norm(std::span<const Subspace> list)
{
    const ReducedFamily family = reduce_family(list);
    if (family.all_trivial()) {
        return 0.0;
    }
    const Index n = family.intersection.ambient_dim();
    Matrix product = Matrix::Identity(n, n);
    for (const auto& c : family.components) {
        product = projector(c).matrix() * product;
    }
    return spectral_norm(product);
}

} // namespace

std::string_view to_string(IterKind kind)
{
    return kind == IterKind::simultaneous ? "simultaneous" : "cyclic";
}

Matrix IterOperator::deviation() const
{
    return matrix_ - limit_.matrix();
}

IterOperator simultaneous_operator(std::span<const Subspace> list)
{
    const Index n = require_common_dim(list, "simultaneous_operator");
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& s : list) {
        sum += projector(s).matrix();
    }
    sum /= static_cast<double>(list.size());
    return IterOperator(std::move(sum), IterKind::simultaneous, projector(intersection(list)),
                        std::vector<Subspace>(list.begin(), list.end()));
}

IterOperator cyclic_operator(std::span<const Subspace> list)
{
    const Index n = require_common_dim(list, "cyclic_operator");
    Matrix product = Matrix::Identity(n, n);
    for (const auto& s : list) {
        product = projector(s).matrix() * product;
    }
    return IterOperator(std::move(product), IterKind::cyclic, projector(intersection(list)),
                        std::vector<Subspace>(list.begin(), list.end()));
}

double IterationTrace::max_violation() const
{
    double worst = -std::numeric_limits<double>::infinity();
    const std::size_t count = std::min(errors.size(), bounds.size());
    for (std::size_t k = 0; k < count; ++k) {
        worst = std::max(worst, errors[k] - bounds[k]);
    }
    return worst;
}

std::vector<double> bound_factors(IterKind kind, std::span<const Subspace> list, int k_max)
{
    require_common_dim(list, "bound_factors");
    if (k_max < 0) {
        throw InputError("bound_factors: k_max must be non-negative");
    }
    std::vector<double> factors(static_cast<std::size_t>(k_max) + 1, 0.0);
    factors[0] = 1.0;
    if (list.size() == 1) {
        return factors;
    }
    if (kind == IterKind::simultaneous) {
        const double q = optimal_rate_simultaneous(list);
        for (int k = 1; k <= k_max; ++k) {
            factors[static_cast<std::size_t>(k)] = std::pow(q, k);
        }
    } else if (list.size() == 2) {
        const double c = cos_two(list[0], list[1]).value;
        for (int k = 1; k <= k_max; ++k) {
            factors[static_cast<std::size_t>(k)] = std::pow(c, 2 * k - 1);
        }
    } else {
        const double base = reduced_product_norm(list);
        for (int k = 1; k <= k_max; ++k) {
            factors[static_cast<std::size_t>(k)] = std::pow(base, k);
        }
    }
    return factors;
}

IterationTrace iterate(const IterOperator& op, const Vector& x0, int k_max)
{
    if (x0.size() != op.dim()) {
        throw InputError("iterate: start vector has dimension " + std::to_string(x0.size()) + ", expected " +
                         std::to_string(op.dim()));
    }
    if (k_max < 0) {
        throw InputError("iterate: k_max must be non-negative");
    }
    require_finite(x0, "iterate");

    IterationTrace trace;
    trace.start = x0;
    trace.errors.reserve(static_cast<std::size_t>(k_max) + 1);
    const Vector limit = op.limit_projector().apply(x0);
    Vector x = x0;
    trace.errors.push_back((x - limit).norm());
    for (int k = 1; k <= k_max; ++k) {
        x = op.matrix() * x;
        trace.errors.push_back((x - limit).norm());
    }

    const double scale = x0.norm();
    trace.bounds = bound_factors(op.kind(), op.factors(), k_max);
    for (double& b : trace.bounds) {
        b *= scale;
    }
    return trace;
}

Matrix error_operator(const IterOperator& op, int k)
{
    require_positive_k(k, "error_operator");
    return matrix_power(op.deviation(), k);
}

double error_operator_norm(const IterOperator& op, int k)
{
    return spectral_norm(error_operator(op, k));
}

double optimal_rate_simultaneous(std::span<const Subspace> list)
{
    require_pair_or_more(list, "optimal_rate_simultaneous");
    const FriedrichsResult cos = friedrichs_gram(list);
    if (cos.degenerate) {
        return 0.0;
    }
    const auto r = static_cast<double>(list.size());
    return (r - 1.0) / r * cos.value + 1.0 / r;
}

double optimal_bound_simultaneous(std::span<const Subspace> list, int k)
{
    require_positive_k(k, "optimal_bound_simultaneous");
    return std::pow(optimal_rate_simultaneous(list), k);
}

double kw_bound(const Subspace& m1, const Subspace& m2, int k)
{
    require_positive_k(k, "kw_bound");
    return std::pow(cos_two(m1, m2).value, 2 * k - 1);
}

double cyclic_bound(std::span<const Subspace> list, int k)
{
    require_positive_k(k, "cyclic_bound");
    require_pair_or_more(list, "cyclic_bound");
    return std::pow(reduced_product_norm(list), k);
}

double verify_error_identity(const IterOperator& op, int k)
{
    require_positive_k(k, "verify_error_identity");
    Matrix power = op.matrix();
    for (int i = 1; i < k; ++i) {
        power = power * op.matrix();
    }
    const Matrix lhs = power - op.limit_projector().matrix();
    const Matrix rhs = error_operator(op, k);
    return spectral_norm(lhs - rhs);
}

MethodComparison compare_methods(const Subspace& m1, const Subspace& m2, int k)
{
    const Subspace pair[] = {m1, m2};
    return MethodComparison{kw_bound(m1, m2, k), optimal_bound_simultaneous(pair, k)};
}

Vector adversarial_start(const IterOperator& op)
{
    return top_right_singular_vector(op.deviation());
}

} // namespace projopt
