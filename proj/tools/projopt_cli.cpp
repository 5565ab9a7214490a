// projopt: command-line front end for scenario analysis, iteration and
// verification.
//
//   projopt analyze  --scenario FILE            Friedrichs numbers, rates, norms
//   projopt run      --scenario FILE            traces, bounds, requested checks
//   projopt verify   [--scenario FILE]          every applicable check; without a
//                                               scenario, a seeded random suite
//   projopt generate two|random ... --out FILE  write a scenario file
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 input error.

#include "projopt/generators.hpp"
#include "projopt/report.hpp"
#include "projopt/runner.hpp"
#include "projopt/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

struct OutputOptions {
    std::string format = "json";
    std::string out;
    bool timing = false;
};

struct ScenarioOptions {
    std::string path;
    std::optional<std::uint64_t> seed;
    std::optional<int> kmax;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts)
{
    cmd->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out, "Output path (stdout when omitted)");
    cmd->add_flag("--timing", opts.timing, "Record wall time in the report metadata");
}

projopt::ReportFormat format_of(const OutputOptions& opts)
{
    return opts.format == "csv" ? projopt::ReportFormat::csv : projopt::ReportFormat::json;
}

projopt::Scenario load(const ScenarioOptions& opts)
{
    projopt::Scenario s = projopt::load_scenario(opts.path);
    if (opts.kmax) {
        s.k_max = *opts.kmax;
    }
    if (opts.seed) {
        if (auto* random = std::get_if<projopt::RandomStarts>(&s.starts)) {
            random->seed = *opts.seed;
        }
    }
    s.validate();
    return s;
}

template <class Fn>
auto timed(bool enabled, Fn fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    auto result = fn();
    if (enabled) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        return std::make_pair(std::move(result), std::optional<double>(dt.count()));
    }
    return std::make_pair(std::move(result), std::optional<double>());
}

int exit_code(const projopt::Report& rep)
{
    if (!rep.error.empty()) {
        return kExitInputError;
    }
    return rep.all_passed() ? kExitOk : kExitCheckFailure;
}

void summarize(const projopt::Report& rep)
{
    for (const auto& c : rep.checks) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << rep.scenario_name << " " << c.name << " residual "
                  << c.residual << " (tol " << c.tolerance << ")\n";
    }
    if (!rep.error.empty()) {
        std::cerr << "ERROR " << rep.scenario_name << ": " << rep.error << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Projection methods onto subspaces: Friedrichs numbers, exact error norms and optimal bounds"};
    app.require_subcommand(1);

    ScenarioOptions analyze_in;
    OutputOptions analyze_out;
    auto* analyze = app.add_subcommand("analyze", "Friedrichs numbers, optimal rate and alignment conditions");
    analyze->add_option("--scenario", analyze_in.path, "Scenario file")->required()->check(CLI::ExistingFile);
    analyze->add_option("--seed", analyze_in.seed, "Override the seed of random starts");
    analyze->add_option("--kmax", analyze_in.kmax, "Override k_max");
    add_output_options(analyze, analyze_out);

    ScenarioOptions run_in;
    OutputOptions run_out;
    auto* run = app.add_subcommand("run", "Iterate from every start, attach bounds and run the scenario's checks");
    run->add_option("--scenario", run_in.path, "Scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", run_in.seed, "Override the seed of random starts");
    run->add_option("--kmax", run_in.kmax, "Override k_max");
    add_output_options(run, run_out);

    ScenarioOptions verify_in;
    OutputOptions verify_out;
    std::uint64_t verify_seed = 1;
    int verify_count = 100;
    auto* verify = app.add_subcommand("verify", "Run the full identity suite on a scenario or on random instances");
    verify->add_option("--scenario", verify_in.path, "Scenario file; omit for the random suite")
        ->check(CLI::ExistingFile);
    verify->add_option("--seed", verify_seed, "Seed of the random suite (or of a scenario's random starts)")
        ->capture_default_str();
    verify->add_option("--count", verify_count, "Number of random instances")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--kmax", verify_in.kmax, "Override k_max (scenario mode)");
    add_output_options(verify, verify_out);

    auto* generate = app.add_subcommand("generate", "Write a scenario file");
    generate->require_subcommand(1);
    std::string gen_out;
    std::uint64_t gen_seed = 1;
    std::optional<int> gen_kmax;
    std::string gen_method = "simultaneous";
    double theta = 60.0;
    long ambient = 2;
    long shared = 0;
    std::vector<long> dims;

    auto* gen_two = generate->add_subcommand("two", "Two subspaces with a planted Friedrichs angle");
    gen_two->add_option("--theta", theta, "Friedrichs angle in degrees, (0, 90]")->capture_default_str();
    gen_two->add_option("--n", ambient, "Ambient dimension")->capture_default_str();
    gen_two->add_option("--shared", shared, "Dimension of the common part")->capture_default_str();

    auto* gen_random = generate->add_subcommand("random", "Random subspaces from Gaussian spanning vectors");
    gen_random->add_option("--n", ambient, "Ambient dimension")->capture_default_str();
    gen_random->add_option("--dims", dims, "Subspace dimensions, comma separated")->required()->delimiter(',');
    gen_random->add_option("--shared", shared, "Planted common dimension")->capture_default_str();

    for (auto* cmd : {gen_two, gen_random}) {
        cmd->add_option("--seed", gen_seed, "Seed")->capture_default_str();
        cmd->add_option("--kmax", gen_kmax, "k_max written into the scenario");
        cmd->add_option("--method", gen_method, "Iteration method")
            ->check(CLI::IsMember({"simultaneous", "cyclic", "product_alternating"}))
            ->capture_default_str();
        cmd->add_option("--out", gen_out, "Scenario file to write (stdout when omitted)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (analyze->parsed()) {
            const projopt::Scenario s = load(analyze_in);
            auto [rep, wall] = timed(analyze_out.timing, [&] { return projopt::analyze_scenario(s); });
            rep.metadata.wall_time_s = wall;
            projopt::emit_report(rep, format_of(analyze_out), analyze_out.out);
            summarize(rep);
            return exit_code(rep);
        }
        if (run->parsed()) {
            const projopt::Scenario s = load(run_in);
            auto [rep, wall] = timed(run_out.timing, [&] { return projopt::run_scenario(s); });
            rep.metadata.wall_time_s = wall;
            projopt::emit_report(rep, format_of(run_out), run_out.out);
            summarize(rep);
            return exit_code(rep);
        }
        if (verify->parsed()) {
            if (!verify_in.path.empty()) {
                if (verify->count("--seed") > 0) {
                    verify_in.seed = verify_seed;
                }
                const projopt::Scenario s = load(verify_in);
                auto [rep, wall] = timed(verify_out.timing, [&] { return projopt::verify_scenario(s); });
                rep.metadata.wall_time_s = wall;
                projopt::emit_report(rep, format_of(verify_out), verify_out.out);
                summarize(rep);
                return exit_code(rep);
            }
            auto [suite, wall] =
                timed(verify_out.timing, [&] { return projopt::verify_suite(verify_seed, verify_count); });
            if (wall) {
                std::cerr << "wall time " << *wall << " s\n";
            }
            projopt::emit_report(suite, format_of(verify_out), verify_out.out);
            for (const auto& rep : suite.instances) {
                if (!rep.all_passed()) {
                    summarize(rep);
                }
            }
            std::cerr << suite.instances.size() << " instances, " << suite.failure_count() << " failures\n";
            return suite.all_passed() ? kExitOk : kExitCheckFailure;
        }
        if (generate->parsed()) {
            projopt::Scenario s;
            if (gen_two->parsed()) {
                s = projopt::generate_two_subspace(theta, ambient, shared, gen_seed);
            } else {
                const std::vector<projopt::Index> d(dims.begin(), dims.end());
                s = projopt::generate_random(ambient, d, gen_seed, shared);
            }
            if (gen_kmax) {
                s.k_max = *gen_kmax;
            }
            if (gen_method == "cyclic") {
                s.method = projopt::Method::cyclic;
            } else if (gen_method == "product_alternating") {
                s.method = projopt::Method::product_alternating;
            }
            s.validate();
            if (gen_out.empty()) {
                std::cout << projopt::format_scenario(s);
            } else {
                projopt::save_scenario(s, gen_out);
            }
            return kExitOk;
        }
    } catch (const projopt::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
