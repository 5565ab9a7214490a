#include "projopt/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace projopt {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const RouteEntry& e)
{
    Json j;
    j["route"] = e.route;
    j["value"] = e.value ? Json(*e.value) : Json(nullptr);
    j["degenerate"] = e.degenerate;
    if (!e.error.empty()) {
        j["error"] = e.error;
    }
    return j;
}

Json to_json(const TraceSummary& t)
{
    Json j;
    j["start_index"] = t.start_index;
    j["method"] = t.method;
    j["start"] = t.start;
    j["errors"] = t.errors;
    j["bounds"] = t.bounds;
    j["max_violation"] = t.max_violation;
    return j;
}

Json to_json(const CheckOutcome& c)
{
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["residual"] = c.residual;
    j["tolerance"] = c.tolerance;
    j["detail"] = c.detail;
    return j;
}

Json to_json(const Report& r)
{
    Json j;
    j["scenario_name"] = r.scenario_name;
    j["mode"] = r.mode;
    j["method"] = r.method;
    j["subspace_count"] = r.subspace_count;
    j["ambient_dim"] = r.ambient_dim;
    j["k_max"] = r.k_max;
    Json routes = Json::array();
    for (const auto& e : r.friedrichs) {
        routes.push_back(to_json(e));
    }
    j["friedrichs"] = routes;
    j["q"] = r.q ? Json(*r.q) : Json(nullptr);
    j["cos_cd"] = r.cos_cd ? Json(*r.cos_cd) : Json(nullptr);
    if (r.alignment) {
        j["alignment"] = {{"friedrichs", r.alignment->friedrichs},
                          {"averaged_error_norm", r.alignment->averaged_error_norm},
                          {"product_error_norm", r.alignment->product_error_norm},
                          {"cos_cd", r.alignment->cos_cd}};
    } else {
        j["alignment"] = nullptr;
    }
    j["chain_residuals"] = r.chain_residuals ? Json(*r.chain_residuals) : Json(nullptr);
    Json traces = Json::array();
    for (const auto& t : r.traces) {
        traces.push_back(to_json(t));
    }
    j["traces"] = traces;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back(to_json(c));
    }
    j["check_outcomes"] = checks;
    j["error"] = r.error;
    Json meta;
    meta["seed"] = r.metadata.seed;
    meta["tolerances"] = Json::object();
    for (const auto& [name, value] : r.metadata.tolerances) {
        meta["tolerances"][name] = value;
    }
    if (r.metadata.wall_time_s) {
        meta["wall_time_s"] = *r.metadata.wall_time_s;
    }
    j["metadata"] = meta;
    return j;
}

template <class T>
std::optional<T> optional_field(const Json& j, const char* key)
{
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

Report report_from(const Json& j)
{
    Report r;
    r.scenario_name = j.at("scenario_name").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.subspace_count = j.at("subspace_count").get<int>();
    r.ambient_dim = j.at("ambient_dim").get<long>();
    r.k_max = j.at("k_max").get<int>();
    for (const auto& e : j.at("friedrichs")) {
        RouteEntry entry;
        entry.route = e.at("route").get<std::string>();
        entry.value = optional_field<double>(e, "value");
        entry.degenerate = e.at("degenerate").get<bool>();
        entry.error = e.value("error", std::string());
        r.friedrichs.push_back(std::move(entry));
    }
    r.q = optional_field<double>(j, "q");
    r.cos_cd = optional_field<double>(j, "cos_cd");
    if (j.contains("alignment") && !j.at("alignment").is_null()) {
        const Json& a = j.at("alignment");
        r.alignment = AlignmentEntry{a.at("friedrichs").get<double>(), a.at("averaged_error_norm").get<double>(),
                                     a.at("product_error_norm").get<double>(), a.at("cos_cd").get<double>()};
    }
    r.chain_residuals = optional_field<std::array<double, 5>>(j, "chain_residuals");
    for (const auto& t : j.at("traces")) {
        TraceSummary trace;
        trace.start_index = t.at("start_index").get<int>();
        trace.method = t.at("method").get<std::string>();
        trace.start = t.at("start").get<std::vector<double>>();
        trace.errors = t.at("errors").get<std::vector<double>>();
        trace.bounds = t.at("bounds").get<std::vector<double>>();
        trace.max_violation = t.at("max_violation").get<double>();
        r.traces.push_back(std::move(trace));
    }
    for (const auto& c : j.at("check_outcomes")) {
        r.checks.push_back(CheckOutcome{c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                                        c.at("residual").get<double>(), c.at("tolerance").get<double>(),
                                        c.at("detail").get<std::string>()});
    }
    r.error = j.at("error").get<std::string>();
    const Json& meta = j.at("metadata");
    r.metadata.seed = meta.at("seed").get<std::uint64_t>();
    for (const auto& [name, value] : meta.at("tolerances").items()) {
        r.metadata.tolerances[name] = value.get<double>();
    }
    r.metadata.wall_time_s = optional_field<double>(meta, "wall_time_s");
    return r;
}

std::string csv_number(double v)
{
    return fmt::format("{}", v);
}

void append_csv_rows(std::string& out, const Report& r)
{
    for (const auto& t : r.traces) {
        const std::size_t count = std::min(t.errors.size(), t.bounds.size());
        for (std::size_t k = 0; k < count; ++k) {
            const double error = t.errors[k];
            const double bound = t.bounds[k];
            std::string ratio;
            if (bound != 0.0) {
                ratio = csv_number(error / bound);
            } else if (error != 0.0) {
                ratio = "inf";
            }
            out += fmt::format("{},{},{},{},{},{}\n", r.scenario_name, t.start_index, k, csv_number(error),
                               csv_number(bound), ratio);
        }
    }
}

constexpr std::string_view kCsvHeader = "scenario,start_index,k,error,bound,ratio\n";

void write_text(const std::string& text, const std::filesystem::path& path)
{
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

} // namespace

bool Report::all_passed() const
{
    return error.empty() && failure_count() == 0;
}

int Report::failure_count() const
{
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

int SuiteReport::failure_count() const
{
    int total = 0;
    for (const auto& r : instances) {
        total += r.failure_count() + (r.error.empty() ? 0 : 1);
    }
    return total;
}

std::string report_to_json(const Report& report)
{
    return to_json(report).dump(2) + "\n";
}

Report report_from_json(std::string_view text)
{
    return report_from(Json::parse(text));
}

std::string report_to_csv(const Report& report)
{
    std::string out(kCsvHeader);
    append_csv_rows(out, report);
    return out;
}

std::string suite_to_json(const SuiteReport& suite)
{
    Json j;
    j["suite"] = suite.suite;
    j["seed"] = suite.seed;
    j["instance_count"] = suite.instances.size();
    j["failures"] = suite.failure_count();
    Json instances = Json::array();
    for (const auto& r : suite.instances) {
        instances.push_back(to_json(r));
    }
    j["instances"] = instances;
    return j.dump(2) + "\n";
}

SuiteReport suite_from_json(std::string_view text)
{
    const Json j = Json::parse(text);
    SuiteReport suite;
    suite.suite = j.at("suite").get<std::string>();
    suite.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& r : j.at("instances")) {
        suite.instances.push_back(report_from(r));
    }
    return suite;
}

std::string suite_to_csv(const SuiteReport& suite)
{
    std::string out(kCsvHeader);
    for (const auto& r : suite.instances) {
        append_csv_rows(out, r);
    }
    return out;
}

void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path)
{
    write_text(format == ReportFormat::json ? report_to_json(report) : report_to_csv(report), path);
}

void emit_report(const SuiteReport& suite, ReportFormat format, const std::filesystem::path& path)
{
    write_text(format == ReportFormat::json ? suite_to_json(suite) : suite_to_csv(suite), path);
}

} // namespace projopt
