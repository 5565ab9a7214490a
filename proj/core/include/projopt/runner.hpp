#pragma once

#include "projopt/report.hpp"
#include "projopt/scenario.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace projopt {

/// Every tolerance used by the checks, in one place. Echoed into each report.
struct Tolerances {
    double norm_chain = 1e-8;      ///< adjacent members of the exact-norm chain
    double kw = 1e-9;              ///< cyclic error norm vs cos^(2k-1)
    double lemma_identity = 1e-9;  ///< (T^k - P_M) vs (T - P_M)^k
    double pierra_lift = 1e-9;     ///< product-space trajectory vs lifted trajectory
    double compare_order = 1e-12;  ///< cyclic bound <= simultaneous bound + tol
    double compare_gap = 1e-12;    ///< strict gap required when cos <= 1 - compare_gap_cos
    double compare_gap_cos = 1e-6;
    double bound_violation = 1e-10; ///< errors[k] <= bounds[k] + tol * max(1, scale)
    double tightness = 1e-8;        ///< adversarial start reaches q^k - tol
    double routes = 1e-9;           ///< Friedrichs routes agree
    double strict_below_one = 1e-12;

    [[nodiscard]] std::map<std::string, double> as_map() const;
};

/// Friedrichs numbers, q, cos(C, D) and the alignment conditions; no iteration.
[[nodiscard]] Report analyze_scenario(const Scenario& scenario, const Tolerances& tol = {});

/// Analysis plus one trace per start and every check listed in the scenario.
/// Infeasible affine input is reported through Report::error.
[[nodiscard]] Report run_scenario(const Scenario& scenario, const Tolerances& tol = {});

/// run_scenario with every check that applies to the scenario's shape.
[[nodiscard]] Report verify_scenario(const Scenario& scenario, const Tolerances& tol = {});

/// `count` seeded random instances (see generate_verify_instance), each verified.
[[nodiscard]] SuiteReport verify_suite(std::uint64_t seed, int count, const Tolerances& tol = {});

/// Checks that apply to a family of r subspaces in the given mode/method.
[[nodiscard]] std::vector<Check> applicable_checks(std::size_t r);

} // namespace projopt
