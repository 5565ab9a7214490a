#include "projopt/runner.hpp"

#include "projopt/angles.hpp"
#include "projopt/generators.hpp"
#include "projopt/productspace.hpp"
#include "projopt/projmethods.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace projopt {

namespace {

// Geometry shared by the analysis and the checks of one scenario.
struct Instance {
    const Scenario& scenario;
    std::vector<Subspace> linear; // directions in affine mode
    std::vector<AffineSubspace> affine;
    std::optional<AffineSubspace> target;
    bool degenerate = false;

    [[nodiscard]] std::size_t r() const { return linear.size(); }
    [[nodiscard]] bool is_affine() const { return scenario.mode == Mode::affine; }
    /// Offset of a start from the anchor P_V(0); the start itself in linear mode.
    [[nodiscard]] Vector centered(const Vector& x) const { return target ? Vector(x - target->anchor()) : x; }
};

Instance make_instance(const Scenario& s)
{
    Instance inst{s, s.linear_subspaces(), {}, std::nullopt, false};
    if (s.mode == Mode::affine) {
        inst.affine = s.affine_subspaces();
    }
    if (inst.r() >= 2) {
        inst.degenerate = reduce_family(inst.linear).all_trivial();
    } else {
        inst.degenerate = true;
    }
    return inst;
}

Report base_report(const Scenario& s, const Tolerances& tol)
{
    Report rep;
    rep.scenario_name = s.name;
    rep.mode = std::string(to_string(s.mode));
    rep.method = std::string(to_string(s.method));
    rep.subspace_count = static_cast<int>(s.subspaces.size());
    rep.ambient_dim = static_cast<long>(s.ambient_dim);
    rep.k_max = s.k_max;
    rep.metadata.seed = s.seed();
    rep.metadata.tolerances = tol.as_map();
    return rep;
}

void fill_analysis(Report& rep, const Instance& inst)
{
    if (inst.r() < 2) {
        return;
    }
    const FriedrichsResult gram = friedrichs_gram(inst.linear);
    rep.friedrichs.push_back(RouteEntry{std::string(to_string(gram.route)), gram.value, gram.degenerate, {}});
    try {
        const FriedrichsResult inv = friedrichs_from_norm(inst.linear);
        rep.friedrichs.push_back(RouteEntry{std::string(to_string(inv.route)), inv.value, inv.degenerate, {}});
    } catch (const DegenerateInputError& e) {
        rep.friedrichs.push_back(
            RouteEntry{std::string(to_string(FriedrichsRoute::norm_inversion)), std::nullopt, true, e.what()});
    }
    if (inst.r() == 2) {
        const FriedrichsResult two = cos_two(inst.linear[0], inst.linear[1]);
        rep.friedrichs.push_back(RouteEntry{std::string(to_string(two.route)), two.value, two.degenerate, {}});
    }
    rep.q = optimal_rate_simultaneous(inst.linear);

    const Index product_dim = inst.linear.front().ambient_dim() * static_cast<Index>(inst.r());
    if (product_dim <= kMaxProductDim) {
        const AlignmentConditions a = alignment_conditions(inst.linear);
        rep.cos_cd = a.cos_cd;
        rep.alignment = AlignmentEntry{a.friedrichs, a.averaged_error_norm, a.product_error_norm, a.cos_cd};
    }
}

IterationTrace trace_for(const Instance& inst, Method method, const Vector& x0, int k_max)
{
    if (inst.is_affine()) {
        return method == Method::cyclic ? cyclic_affine(inst.affine, x0, k_max)
                                        : simultaneous_affine(inst.affine, x0, k_max);
    }
    switch (method) {
    case Method::simultaneous:
        return iterate(simultaneous_operator(inst.linear), x0, k_max);
    case Method::cyclic:
        return iterate(cyclic_operator(inst.linear), x0, k_max);
    case Method::product_alternating:
        return product_alternating_trace(inst.linear, x0, k_max);
    }
    throw InputError("unknown method");
}

CheckOutcome outcome(Check check, double residual, double tolerance, bool passed, std::string detail)
{
    return CheckOutcome{std::string(to_string(check)), passed, residual, tolerance, std::move(detail)};
}

CheckOutcome check_norm_chain(Report& rep, const Instance& inst, const Tolerances& tol)
{
    const int k_max = inst.scenario.k_max;
    if (inst.degenerate) {
        // Every member is zero by convention; confirm the operator norms vanish.
        const IterOperator op = simultaneous_operator(inst.linear);
        double worst = 0.0;
        for (int k = 1; k <= k_max; ++k) {
            worst = std::max(worst, error_operator_norm(op, k));
        }
        return outcome(Check::norm_chain, worst, tol.norm_chain, worst <= tol.norm_chain,
                       "degenerate family: every member of the chain vanishes");
    }
    std::array<double, 5> worst{};
    for (const NormChain& link : norm_chain(inst.linear, k_max)) {
        const auto res = link.residuals();
        for (std::size_t i = 0; i < worst.size(); ++i) {
            worst[i] = std::max(worst[i], res[i]);
        }
    }
    rep.chain_residuals = worst;
    const double residual = *std::max_element(worst.begin(), worst.end());
    return outcome(Check::norm_chain, residual, tol.norm_chain, residual <= tol.norm_chain,
                   fmt::format("k = 1..{}", k_max));
}

CheckOutcome check_kw(const Instance& inst, const Tolerances& tol)
{
    const IterOperator op = cyclic_operator(inst.linear);
    const double c = cos_two(inst.linear[0], inst.linear[1]).value;
    double worst = 0.0;
    for (int k = 1; k <= inst.scenario.k_max; ++k) {
        worst = std::max(worst, std::abs(error_operator_norm(op, k) - std::pow(c, 2 * k - 1)));
    }
    return outcome(Check::kw, worst, tol.kw, worst <= tol.kw,
                   fmt::format("|norm((P2 P1)^k - P_M) - cos^(2k-1)|, cos = {}", c));
}

CheckOutcome check_lemma(const Instance& inst, const Tolerances& tol)
{
    const IterOperator ops[] = {simultaneous_operator(inst.linear), cyclic_operator(inst.linear)};
    double worst = 0.0;
    for (const auto& op : ops) {
        for (int k = 1; k <= inst.scenario.k_max; ++k) {
            worst = std::max(worst, verify_error_identity(op, k));
        }
    }
    return outcome(Check::lemma_identity, worst, tol.lemma_identity, worst <= tol.lemma_identity,
                   "simultaneous and cyclic operators");
}

CheckOutcome check_pierra(const Instance& inst, const std::vector<Vector>& starts, const Tolerances& tol)
{
    double worst = 0.0;
    for (const auto& x : starts) {
        for (double res : verify_pierra_lift_range(inst.linear, inst.centered(x), inst.scenario.k_max)) {
            worst = std::max(worst, res);
        }
    }
    return outcome(Check::pierra_lift, worst, tol.pierra_lift, worst <= tol.pierra_lift,
                   fmt::format("{} starts, k = 0..{}", starts.size(), inst.scenario.k_max));
}

CheckOutcome check_compare(const Instance& inst, const Tolerances& tol)
{
    const double c = cos_two(inst.linear[0], inst.linear[1]).value;
    // Both bounds are 0 on a degenerate pair, so no strict gap there.
    const bool need_strict = !inst.degenerate && c <= 1.0 - tol.compare_gap_cos;
    double worst_order = -std::numeric_limits<double>::infinity();
    double smallest_gap = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= inst.scenario.k_max; ++k) {
        const MethodComparison m = compare_methods(inst.linear[0], inst.linear[1], k);
        worst_order = std::max(worst_order, m.cyclic - m.simultaneous);
        smallest_gap = std::min(smallest_gap, m.simultaneous - m.cyclic);
    }
    const bool ordered = worst_order <= tol.compare_order;
    const bool strict = !need_strict || smallest_gap >= tol.compare_gap;
    return outcome(Check::compare, worst_order, tol.compare_order, ordered && strict,
                   fmt::format("cyclic - simultaneous bound, max over k; smallest gap {}{}", smallest_gap,
                               need_strict ? " (strict gap required)" : ""));
}

CheckOutcome check_bounds(const Instance& inst, const std::vector<IterationTrace>& traces, const Tolerances& tol)
{
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& t : traces) {
        const double scale = std::max(1.0, inst.centered(t.start).norm());
        worst = std::max(worst, t.max_violation() / scale);
    }
    bool passed = worst <= tol.bound_violation;
    std::string detail = fmt::format("max (error - bound) / max(1, scale) = {}", worst);

    // The simultaneous bound, and the two-subspace cyclic bound, are norms of
    // the error operator, so the top singular vector of T - P_M attains them.
    const Method method = inst.scenario.method;
    const bool optimal = method == Method::simultaneous || (method == Method::cyclic && inst.r() == 2);
    if (optimal && inst.r() >= 2) {
        const IterOperator op =
            method == Method::simultaneous ? simultaneous_operator(inst.linear) : cyclic_operator(inst.linear);
        const Vector direction = adversarial_start(op);
        const Vector x0 = inst.target ? Vector(inst.target->anchor() + direction) : direction;
        const IterationTrace t = trace_for(inst, method, x0, inst.scenario.k_max);
        double shortfall = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < t.errors.size(); ++k) {
            shortfall = std::max(shortfall, t.bounds[k] - t.errors[k]);
        }
        const bool tight = shortfall <= tol.tightness;
        passed = passed && tight;
        detail += fmt::format("; adversarial start: max (bound - error) = {} (tolerance {})", shortfall,
                              tol.tightness);
    }
    return outcome(Check::bounds, worst, tol.bound_violation, passed, detail);
}

CheckOutcome check_routes(const Instance& inst, const Tolerances& tol)
{
    const FriedrichsResult gram = friedrichs_gram(inst.linear);
    if (inst.degenerate) {
        bool ok = gram.degenerate && gram.value == 0.0;
        try {
            (void)friedrichs_from_norm(inst.linear);
            ok = false;
        } catch (const DegenerateInputError&) {
        }
        return outcome(Check::routes, 0.0, tol.routes, ok,
                       "degenerate family: gram route reports 0, norm inversion refuses");
    }
    double worst = std::abs(gram.value - friedrichs_from_norm(inst.linear).value);
    if (inst.r() == 2) {
        worst = std::max(worst, std::abs(gram.value - cos_two(inst.linear[0], inst.linear[1]).value));
    }
    return outcome(Check::routes, worst, tol.routes, worst <= tol.routes, "gram_block vs other routes");
}

CheckOutcome check_alignment(const Instance& inst, const Tolerances& tol)
{
    const AlignmentConditions a = alignment_conditions(inst.linear);
    const double largest = std::max({a.friedrichs, a.averaged_error_norm, a.product_error_norm, a.cos_cd});
    if (inst.degenerate) {
        return outcome(Check::alignment, largest, 1.0, a.all_below_one(), "degenerate family");
    }
    const bool strict = a.friedrichs <= 1.0 - tol.strict_below_one;
    return outcome(Check::alignment, largest, 1.0, a.all_below_one() && strict,
                   fmt::format("friedrichs {}, averaged {}, product {}, cos(C,D) {}", a.friedrichs,
                               a.averaged_error_norm, a.product_error_norm, a.cos_cd));
}

Report run_checks(const Scenario& s, const Tolerances& tol)
{
    Report rep = base_report(s, tol);
    const Instance inst = [&] {
        Instance i = make_instance(s);
        if (s.mode == Mode::affine) {
            try {
                i.target = intersection_affine(i.affine);
            } catch (const InfeasibleError& e) {
                rep.error = std::string("infeasible: ") + e.what();
            }
        }
        return i;
    }();
    if (!rep.error.empty()) {
        return rep;
    }
    fill_analysis(rep, inst);

    const std::vector<Vector> starts = s.start_vectors();
    std::vector<IterationTrace> traces;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        IterationTrace t = trace_for(inst, s.method, starts[i], s.k_max);
        TraceSummary summary;
        summary.start_index = static_cast<int>(i);
        summary.method = rep.method;
        summary.start.assign(starts[i].data(), starts[i].data() + starts[i].size());
        summary.errors = t.errors;
        summary.bounds = t.bounds;
        summary.max_violation = t.max_violation();
        rep.traces.push_back(std::move(summary));
        traces.push_back(std::move(t));
    }

    for (Check check : s.checks) {
        switch (check) {
        case Check::norm_chain:
            rep.checks.push_back(check_norm_chain(rep, inst, tol));
            break;
        case Check::kw:
            rep.checks.push_back(check_kw(inst, tol));
            break;
        case Check::lemma_identity:
            rep.checks.push_back(check_lemma(inst, tol));
            break;
        case Check::pierra_lift:
            rep.checks.push_back(check_pierra(inst, starts, tol));
            break;
        case Check::compare:
            rep.checks.push_back(check_compare(inst, tol));
            break;
        case Check::bounds:
            rep.checks.push_back(check_bounds(inst, traces, tol));
            break;
        case Check::routes:
            rep.checks.push_back(check_routes(inst, tol));
            break;
        case Check::alignment:
            rep.checks.push_back(check_alignment(inst, tol));
            break;
        }
    }
    return rep;
}

} // namespace

std::map<std::string, double> Tolerances::as_map() const
{
    return {{"norm_chain", norm_chain},
            {"kw", kw},
            {"lemma_identity", lemma_identity},
            {"pierra_lift", pierra_lift},
            {"compare_order", compare_order},
            {"compare_gap", compare_gap},
            {"compare_gap_cos", compare_gap_cos},
            {"bound_violation", bound_violation},
            {"tightness", tightness},
            {"routes", routes},
            {"strict_below_one", strict_below_one},
            {"containment", kContainmentTol},
            {"feasibility", kFeasibilityTol}};
}

std::vector<Check> applicable_checks(std::size_t r)
{
    if (r < 2) {
        return {Check::lemma_identity, Check::bounds};
    }
    std::vector<Check> out{Check::norm_chain, Check::lemma_identity, Check::pierra_lift, Check::bounds,
                           Check::routes, Check::alignment};
    if (r == 2) {
        out.insert(out.begin() + 1, Check::kw);
        out.push_back(Check::compare);
    }
    return out;
}

Report analyze_scenario(const Scenario& scenario, const Tolerances& tol)
{
    scenario.validate();
    Report rep = base_report(scenario, tol);
    const Instance inst = make_instance(scenario);
    if (scenario.mode == Mode::affine) {
        try {
            (void)intersection_affine(inst.affine);
        } catch (const InfeasibleError& e) {
            rep.error = std::string("infeasible: ") + e.what();
            return rep;
        }
    }
    fill_analysis(rep, inst);
    return rep;
}

Report run_scenario(const Scenario& scenario, const Tolerances& tol)
{
    scenario.validate();
    return run_checks(scenario, tol);
}

Report verify_scenario(const Scenario& scenario, const Tolerances& tol)
{
    Scenario full = scenario;
    full.checks = applicable_checks(scenario.subspaces.size());
    return run_scenario(full, tol);
}

SuiteReport verify_suite(std::uint64_t seed, int count, const Tolerances& tol)
{
    if (count < 1) {
        throw InputError("verify_suite: count must be at least 1");
    }
    SuiteReport suite;
    suite.suite = "random";
    suite.seed = seed;
    suite.instances.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        suite.instances.push_back(verify_scenario(generate_verify_instance(seed, static_cast<std::uint64_t>(i)), tol));
    }
    return suite;
}

} // namespace projopt
