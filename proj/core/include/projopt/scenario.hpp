#pragma once

// Declarative experiment input.
//
// Scenario files are YAML documents with a fixed set of keys; the grammar is
// documented in docs/scenario-format.md. Matrices are written one vector per
// line as flow sequences, so files stay hand-editable and diff-friendly.

#include "projopt/affine.hpp"
#include "projopt/errors.hpp"
#include "projopt/subspace.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace projopt {

/// Version tag expected in the `format` key.
inline constexpr std::string_view kScenarioFormat = "projopt-scenario/1";

enum class Mode { linear, affine };
enum class Method { simultaneous, cyclic, product_alternating };
enum class Check { norm_chain, kw, lemma_identity, pierra_lift, compare, bounds, routes, alignment };

[[nodiscard]] std::string_view to_string(Mode mode);
[[nodiscard]] std::string_view to_string(Method method);
[[nodiscard]] std::string_view to_string(Check check);
[[nodiscard]] std::optional<Check> check_from_string(std::string_view name);

struct SubspaceSpec {
    Matrix spanning;              ///< n x m, columns are the spanning vectors
    std::optional<Vector> anchor; ///< required in affine mode
};

struct RandomStarts {
    int count = 1;
    std::uint64_t seed = 0;
};

struct Scenario {
    std::string name;
    Index ambient_dim = 0;
    Mode mode = Mode::linear;
    Method method = Method::simultaneous;
    int k_max = 1;
    std::vector<SubspaceSpec> subspaces;
    std::variant<std::vector<Vector>, RandomStarts> starts = RandomStarts{};
    std::vector<Check> checks;

    /// Throws ScenarioError on any invariant violation.
    void validate() const;

    [[nodiscard]] std::size_t subspace_count() const { return subspaces.size(); }
    /// Linear subspaces (linear mode) or directions V_i - V_i (affine mode).
    [[nodiscard]] std::vector<Subspace> linear_subspaces() const;
    [[nodiscard]] std::vector<AffineSubspace> affine_subspaces() const;
    /// Explicit starts, or `count` unit vectors drawn from the start seed.
    [[nodiscard]] std::vector<Vector> start_vectors() const;
    /// Seed used for random starts; 0 for explicit starts.
    [[nodiscard]] std::uint64_t seed() const;
};

[[nodiscard]] bool operator==(const Scenario& a, const Scenario& b);

/// Parse or validation failure. `line()` is 1-based, 0 when unknown.
class ScenarioError : public InputError {
public:
    ScenarioError(std::string source, int line, std::string field, const std::string& message);

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

[[nodiscard]] Scenario parse_scenario(std::string_view text, std::string_view source = "<scenario>");
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

/// Canonical text form; parse_scenario(format_scenario(s)) reproduces s exactly.
[[nodiscard]] std::string format_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

} // namespace projopt
