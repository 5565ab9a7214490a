#pragma once

// Structured CLI output and its JSON / CSV serializations.
//
// JSON field names are stable; CSV columns are fixed as
//   scenario,start_index,k,error,bound,ratio
// with ratio = error / bound, left empty when both are zero. Numbers are
// written in shortest round-trip form, so identical reports give identical
// bytes.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace projopt {

struct RouteEntry {
    std::string route;
    std::optional<double> value; ///< absent when the route refused the input
    bool degenerate = false;
    std::string error;

    bool operator==(const RouteEntry&) const = default;
};

struct TraceSummary {
    int start_index = 0;
    std::string method;
    std::vector<double> start;
    std::vector<double> errors;
    std::vector<double> bounds;
    double max_violation = 0.0;

    bool operator==(const TraceSummary&) const = default;
};

struct CheckOutcome {
    std::string name;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;

    bool operator==(const CheckOutcome&) const = default;
};

struct AlignmentEntry {
    double friedrichs = 0.0;
    double averaged_error_norm = 0.0;
    double product_error_norm = 0.0;
    double cos_cd = 0.0;

    bool operator==(const AlignmentEntry&) const = default;
};

struct ReportMetadata {
    std::uint64_t seed = 0;
    std::map<std::string, double> tolerances;
    std::optional<double> wall_time_s; ///< only filled when timing is requested

    bool operator==(const ReportMetadata&) const = default;
};

struct Report {
    std::string scenario_name;
    std::string mode;
    std::string method;
    int subspace_count = 0;
    long ambient_dim = 0;
    int k_max = 0;
    std::vector<RouteEntry> friedrichs;
    std::optional<double> q;
    std::optional<double> cos_cd;
    std::optional<AlignmentEntry> alignment;
    std::optional<std::array<double, 5>> chain_residuals;
    std::vector<TraceSummary> traces;
    std::vector<CheckOutcome> checks;
    std::string error; ///< non-empty when the scenario could not be run
    ReportMetadata metadata;

    [[nodiscard]] bool all_passed() const;
    [[nodiscard]] int failure_count() const;

    bool operator==(const Report&) const = default;
};

/// Several reports produced by one `verify` run.
struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Report> instances;

    [[nodiscard]] int failure_count() const;
    [[nodiscard]] bool all_passed() const { return failure_count() == 0; }

    bool operator==(const SuiteReport&) const = default;
};

enum class ReportFormat { json, csv };

[[nodiscard]] std::string report_to_json(const Report& report);
[[nodiscard]] Report report_from_json(std::string_view text);
[[nodiscard]] std::string report_to_csv(const Report& report);

[[nodiscard]] std::string suite_to_json(const SuiteReport& suite);
[[nodiscard]] SuiteReport suite_from_json(std::string_view text);
[[nodiscard]] std::string suite_to_csv(const SuiteReport& suite);

/// Writes the report; an empty path writes to stdout. Throws std::runtime_error
/// when the file cannot be written.
void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path);
void emit_report(const SuiteReport& suite, ReportFormat format, const std::filesystem::path& path);

} // namespace projopt
