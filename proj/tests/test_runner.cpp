#include "projopt/generators.hpp"
#include "projopt/runner.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace projopt;

namespace {

Scenario scenario(const char* file)
{
    return load_scenario(std::filesystem::path(PROJOPT_SCENARIO_DIR) / file);
}

const CheckOutcome* find(const Report& r, const std::string& name)
{
    for (const auto& c : r.checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

} // namespace

TEST(RunScenario, TwoLinesSimultaneousChain)
{
    const Report r = run_scenario(scenario("two_lines_60.yaml"));
    ASSERT_TRUE(r.q.has_value());
    EXPECT_NEAR(*r.q, 0.75, 1e-12);
    ASSERT_TRUE(r.chain_residuals.has_value());
    for (double res : *r.chain_residuals) {
        EXPECT_LE(res, 1e-8);
    }
    EXPECT_TRUE(r.all_passed());
    EXPECT_EQ(r.traces.size(), 2u);
    EXPECT_EQ(r.traces[0].errors.size(), 6u);
}

TEST(RunScenario, TwoLinesCyclicKw)
{
    const Report r = run_scenario(scenario("two_lines_60_cyclic.yaml"));
    const CheckOutcome* kw = find(r, "kw");
    ASSERT_NE(kw, nullptr);
    EXPECT_TRUE(kw->passed);
    EXPECT_LE(kw->residual, 1e-9);
    EXPECT_EQ(r.traces.size(), 4u);
    for (const auto& t : r.traces) {
        for (std::size_t k = 1; k < t.bounds.size(); ++k) {
            EXPECT_NEAR(t.bounds[k], std::pow(0.5, 2 * static_cast<int>(k) - 1), 1e-12);
        }
    }
}

TEST(RunScenario, AffineBoundAttainedAtFirstStep)
{
    const Report r = run_scenario(scenario("perpendicular_lines_affine.yaml"));
    ASSERT_EQ(r.traces.size(), 1u);
    EXPECT_NEAR(r.traces[0].errors[1], r.traces[0].bounds[1], 1e-8);
    EXPECT_TRUE(r.all_passed());
}

TEST(RunScenario, InfeasibleAffineIsReportedNotThrown)
{
    const Report r = run_scenario(scenario("parallel_lines_infeasible.yaml"));
    EXPECT_FALSE(r.error.empty());
    EXPECT_NE(r.error.find("do not intersect"), std::string::npos);
    EXPECT_FALSE(r.all_passed());
}

TEST(RunScenario, ThreeLinesProductAlternating)
{
    const Report r = run_scenario(scenario("three_lines_120.yaml"));
    ASSERT_TRUE(r.q.has_value());
    EXPECT_NEAR(*r.q, 0.5, 1e-12);
    EXPECT_NEAR(r.friedrichs.front().value.value(), 0.25, 1e-12);
    EXPECT_TRUE(r.all_passed());
}

TEST(RunScenario, EveryRequestedCheckIsReported)
{
    const Scenario s = scenario("two_lines_60.yaml");
    const Report r = run_scenario(s);
    for (Check c : s.checks) {
        EXPECT_NE(find(r, std::string(to_string(c))), nullptr) << to_string(c);
    }
}

TEST(RunScenario, FailuresCarryResiduals)
{
    // A tolerance no computation can meet exposes a failing outcome with its residual.
    Tolerances strict;
    strict.norm_chain = -1.0;
    const Report r = run_scenario(scenario("two_lines_60.yaml"), strict);
    const CheckOutcome* chain = find(r, "norm_chain");
    ASSERT_NE(chain, nullptr);
    EXPECT_FALSE(chain->passed);
    EXPECT_GE(chain->residual, 0.0);
    EXPECT_EQ(r.failure_count(), 1);
}

TEST(AnalyzeScenario, NoTraces)
{
    const Report r = analyze_scenario(scenario("two_lines_60.yaml"));
    EXPECT_TRUE(r.traces.empty());
    ASSERT_TRUE(r.cos_cd.has_value());
    EXPECT_NEAR(*r.cos_cd, std::sqrt(0.75), 1e-12);
}

TEST(VerifySuite, SeededInstancesPass)
{
    const SuiteReport suite = verify_suite(1, 25);
    EXPECT_EQ(suite.instances.size(), 25u);
    EXPECT_EQ(suite.failure_count(), 0);
}

TEST(VerifySuite, Deterministic)
{
    EXPECT_EQ(suite_to_json(verify_suite(3, 5)), suite_to_json(verify_suite(3, 5)));
}

TEST(VerifyScenario, DegenerateInstanceIsHandled)
{
    const std::vector<Index> dims{3, 3, 3};
    const Scenario s = generate_random(3, dims, 2);
    const Report r = verify_scenario(s);
    EXPECT_TRUE(r.all_passed());
    EXPECT_TRUE(r.friedrichs.front().degenerate);
}
