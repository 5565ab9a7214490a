#pragma once

#include "projopt/angles.hpp"
#include "projopt/subspace.hpp"

#include <span>
#include <vector>

namespace projopt {

enum class IterKind { simultaneous, cyclic };

[[nodiscard]] std::string_view to_string(IterKind kind);

/// Iteration operator T together with its limit P_M and the subspaces it was
/// built from. Immutable once constructed.
class IterOperator {
public:
    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] IterKind kind() const { return kind_; }
    [[nodiscard]] const ProjectorOp& limit_projector() const { return limit_; }
    [[nodiscard]] std::span<const Subspace> factors() const { return factors_; }
    [[nodiscard]] Index dim() const { return matrix_.rows(); }

    /// T - P_M.
    [[nodiscard]] Matrix deviation() const;

private:
    friend IterOperator simultaneous_operator(std::span<const Subspace>);
    friend IterOperator cyclic_operator(std::span<const Subspace>);

    IterOperator(Matrix matrix, IterKind kind, ProjectorOp limit, std::vector<Subspace> factors)
        : matrix_(std::move(matrix)), kind_(kind), limit_(std::move(limit)), factors_(std::move(factors))
    {
    }

    Matrix matrix_;
    IterKind kind_;
    ProjectorOp limit_;
    std::vector<Subspace> factors_;
};

/// T = (1/r) sum P_{M_i}.
[[nodiscard]] IterOperator simultaneous_operator(std::span<const Subspace> list);
/// T = P_{M_r} ... P_{M_1}; M_1 is applied first.
[[nodiscard]] IterOperator cyclic_operator(std::span<const Subspace> list);

/// Error norms of one trajectory and the bound attached to it.
///
/// errors[k] = ||x_k - x_inf|| and bounds[k] = c_k * scale, where c_k is the
/// operator-norm bound of the method at step k and `scale` is ||x_0|| (linear)
/// or ||x_0 - P_V(0)|| (affine).
struct IterationTrace {
    std::vector<double> errors;
    std::vector<double> bounds;
    Vector start;

    /// max_k (errors[k] - bounds[k]); negative when the bound holds strictly.
    [[nodiscard]] double max_violation() const;
};

/// Bound factors c_0..c_kmax with c_0 = 1 for the method of `kind` on `list`:
///   simultaneous  q^k, q = (r-1)/r cos(M_1..M_r) + 1/r (0 when every M_i = M)
///   cyclic, r = 2 cos(M_1, M_2)^(2k-1)
///   cyclic, r > 2 ||P_{M_r ∩ M^⊥} ... P_{M_1 ∩ M^⊥}||^k
/// A single subspace gives c_k = 0 for k >= 1.
[[nodiscard]] std::vector<double> bound_factors(IterKind kind, std::span<const Subspace> list, int k_max);

/// Runs x_{k+1} = T x_k by matrix-vector products for k = 0..k_max.
[[nodiscard]] IterationTrace iterate(const IterOperator& op, const Vector& x0, int k_max);

/// (T - P_M)^k by repeated squaring; equals T^k - P_M.
[[nodiscard]] Matrix error_operator(const IterOperator& op, int k);
/// ||T^k - P_M||, k >= 1.
[[nodiscard]] double error_operator_norm(const IterOperator& op, int k);

/// q = (r-1)/r cos(M_1..M_r) + 1/r; zero on degenerate families.
[[nodiscard]] double optimal_rate_simultaneous(std::span<const Subspace> list);
/// q^k: the smallest constant with ||T^k x - P_M x|| <= q^k ||x|| for all x.
[[nodiscard]] double optimal_bound_simultaneous(std::span<const Subspace> list, int k);

/// cos(M_1, M_2)^(2k-1), the exact norm of (P_2 P_1)^k - P_M.
[[nodiscard]] double kw_bound(const Subspace& m1, const Subspace& m2, int k);

/// ||P_{M_r ∩ M^⊥} ... P_{M_1 ∩ M^⊥}||^k; an upper bound for the cyclic method.
[[nodiscard]] double cyclic_bound(std::span<const Subspace> list, int k);

/// ||(T^k - P_M) - (T - P_M)^k|| with T^k formed by plain repeated
/// multiplication and (T - P_M)^k by repeated squaring.
[[nodiscard]] double verify_error_identity(const IterOperator& op, int k);

struct MethodComparison {
    double cyclic = 0.0;       ///< kw_bound(M1, M2, k)
    double simultaneous = 0.0; ///< optimal_bound_simultaneous({M1, M2}, k)
};

[[nodiscard]] MethodComparison compare_methods(const Subspace& m1, const Subspace& m2, int k);

/// Unit start attaining ||T - P_M||: the top right singular vector of T - P_M.
[[nodiscard]] Vector adversarial_start(const IterOperator& op);

} // namespace projopt
