#include "projopt/scenario.hpp"

#include "projopt/rng.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace projopt {

namespace {

template <class Enum, std::size_t N>
std::optional<Enum> lookup(std::string_view name, const std::array<Enum, N>& values)
{
    for (Enum v : values) {
        if (to_string(v) == name) {
            return v;
        }
    }
    return std::nullopt;
}

constexpr std::array kModes{Mode::linear, Mode::affine};
constexpr std::array kMethods{Method::simultaneous, Method::cyclic, Method::product_alternating};
constexpr std::array kChecks{Check::norm_chain,  Check::kw,     Check::lemma_identity, Check::pierra_lift,
                             Check::compare,     Check::bounds, Check::routes,         Check::alignment};

std::string format_double(double v)
{
    return fmt::format("{}", v);
}

std::string format_vector(const Vector& v)
{
    std::string out = "[";
    for (Index i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += format_double(v(i));
    }
    return out + "]";
}

std::string escape_quoted(const std::string& text)
{
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

// Tracks the line of every field seen so validation errors can point at it.
class Parser {
public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    Scenario parse(std::string_view text);

private:
    [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& message) const
    {
        const int line = node.IsDefined() && node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
        throw ScenarioError(source_, line, field, message);
    }

    YAML::Node require(const YAML::Node& parent, const char* key)
    {
        const YAML::Node node = parent[key];
        if (!node.IsDefined() || node.IsNull()) {
            fail(parent, key, "missing required key");
        }
        remember(key, node);
        return node;
    }

    void remember(const std::string& field, const YAML::Node& node)
    {
        if (node.IsDefined() && node.Mark().line >= 0) {
            lines_[field] = node.Mark().line + 1;
        }
    }

    template <class T>
    T scalar(const YAML::Node& node, const std::string& field)
    {
        if (!node.IsScalar()) {
            fail(node, field, "expected a scalar");
        }
        try {
            return node.as<T>();
        } catch (const YAML::Exception&) {
            fail(node, field, "cannot parse '" + node.Scalar() + "'");
        }
    }

    Vector vector(const YAML::Node& node, const std::string& field)
    {
        if (!node.IsSequence()) {
            fail(node, field, "expected a sequence of numbers");
        }
        Vector v(static_cast<Index>(node.size()));
        for (std::size_t i = 0; i < node.size(); ++i) {
            v(static_cast<Index>(i)) = scalar<double>(node[i], field);
        }
        if (!v.allFinite()) {
            fail(node, field, "non-finite entry");
        }
        return v;
    }

    int line_of(const std::string& field) const
    {
        // longest recorded prefix of the failing field
        std::string key = field;
        while (!key.empty()) {
            if (auto it = lines_.find(key); it != lines_.end()) {
                return it->second;
            }
            const auto cut = key.find_last_of(".[");
            key = cut == std::string::npos ? std::string() : key.substr(0, cut);
        }
        return 0;
    }

    std::string source_;
    std::map<std::string, int> lines_;
};

Scenario Parser::parse(std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ScenarioError(source_, e.mark.line + 1, "", "syntax error: " + e.msg);
    }
    if (!root.IsMap()) {
        throw ScenarioError(source_, 1, "", "expected a mapping at the top level");
    }

    const auto format = scalar<std::string>(require(root, "format"), "format");
    if (format != kScenarioFormat) {
        fail(root["format"], "format", "unsupported format '" + format + "', expected " + std::string(kScenarioFormat));
    }

    static const std::array known{"format", "name", "ambient_dim", "mode", "method", "k_max", "starts", "checks",
                                  "subspaces"};
    for (const auto& entry : root) {
        const auto key = entry.first.as<std::string>();
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            fail(entry.first, key, "unknown key");
        }
    }

    Scenario s;
    s.name = scalar<std::string>(require(root, "name"), "name");
    s.ambient_dim = scalar<long>(require(root, "ambient_dim"), "ambient_dim");
    s.k_max = scalar<int>(require(root, "k_max"), "k_max");

    const auto mode = scalar<std::string>(require(root, "mode"), "mode");
    if (auto m = lookup<Mode>(mode, kModes)) {
        s.mode = *m;
    } else {
        fail(root["mode"], "mode", "unknown mode '" + mode + "' (linear, affine)");
    }
    const auto method = scalar<std::string>(require(root, "method"), "method");
    if (auto m = lookup<Method>(method, kMethods)) {
        s.method = *m;
    } else {
        fail(root["method"], "method",
             "unknown method '" + method + "' (simultaneous, cyclic, product_alternating)");
    }

    if (const YAML::Node checks = root["checks"]; checks.IsDefined() && !checks.IsNull()) {
        remember("checks", checks);
        if (!checks.IsSequence()) {
            fail(checks, "checks", "expected a sequence of check names");
        }
        for (const auto& c : checks) {
            const auto name = scalar<std::string>(c, "checks");
            const auto check = check_from_string(name);
            if (!check) {
                fail(c, "checks", "unknown check '" + name + "'");
            }
            s.checks.push_back(*check);
        }
    }

    const YAML::Node starts = require(root, "starts");
    if (starts.IsMap()) {
        RandomStarts random;
        random.count = scalar<int>(require(starts, "random"), "starts.random");
        if (const YAML::Node seed = starts["seed"]; seed.IsDefined()) {
            remember("starts.seed", seed);
            random.seed = scalar<std::uint64_t>(seed, "starts.seed");
        }
        s.starts = random;
    } else if (starts.IsSequence()) {
        std::vector<Vector> explicit_starts;
        for (std::size_t i = 0; i < starts.size(); ++i) {
            const std::string field = fmt::format("starts[{}]", i);
            remember(field, starts[i]);
            explicit_starts.push_back(vector(starts[i], field));
        }
        s.starts = std::move(explicit_starts);
    } else {
        fail(starts, "starts", "expected a list of vectors or {random: <count>, seed: <int>}");
    }

    const YAML::Node subspaces = require(root, "subspaces");
    if (!subspaces.IsSequence()) {
        fail(subspaces, "subspaces", "expected a sequence");
    }
    for (std::size_t i = 0; i < subspaces.size(); ++i) {
        const YAML::Node item = subspaces[i];
        const std::string field = fmt::format("subspaces[{}]", i);
        remember(field, item);
        if (!item.IsMap()) {
            fail(item, field, "expected a mapping with 'span' and optional 'anchor'");
        }
        for (const auto& entry : item) {
            const auto key = entry.first.as<std::string>();
            if (key != "span" && key != "anchor") {
                fail(entry.first, field + "." + key, "unknown key");
            }
        }
        const YAML::Node span = item["span"];
        if (!span.IsDefined() || !span.IsSequence()) {
            fail(item, field + ".span", "expected a sequence of spanning vectors ([] for the trivial subspace)");
        }
        remember(field + ".span", span);
        SubspaceSpec spec;
        spec.spanning.resize(s.ambient_dim > 0 ? s.ambient_dim : 0, static_cast<Index>(span.size()));
        for (std::size_t j = 0; j < span.size(); ++j) {
            const std::string vfield = fmt::format("{}.span[{}]", field, j);
            remember(vfield, span[j]);
            const Vector v = vector(span[j], vfield);
            if (v.size() != s.ambient_dim) {
                fail(span[j], vfield,
                     fmt::format("spanning vector has dimension {}, ambient_dim is {}", v.size(), s.ambient_dim));
            }
            spec.spanning.col(static_cast<Index>(j)) = v;
        }
        if (const YAML::Node anchor = item["anchor"]; anchor.IsDefined() && !anchor.IsNull()) {
            remember(field + ".anchor", anchor);
            spec.anchor = vector(anchor, field + ".anchor");
        }
        s.subspaces.push_back(std::move(spec));
    }

    try {
        s.validate();
    } catch (const ScenarioError& e) {
        throw ScenarioError(source_, line_of(e.field()), e.field(), e.what());
    }
    return s;
}

[[noreturn]] void invalid(const std::string& field, const std::string& message)
{
    throw ScenarioError("", 0, field, message);
}

} // namespace

std::string_view to_string(Mode mode)
{
    return mode == Mode::linear ? "linear" : "affine";
}

std::string_view to_string(Method method)
{
    switch (method) {
    case Method::simultaneous:
        return "simultaneous";
    case Method::cyclic:
        return "cyclic";
    case Method::product_alternating:
        return "product_alternating";
    }
    return "unknown";
}

std::string_view to_string(Check check)
{
    switch (check) {
    case Check::norm_chain:
        return "norm_chain";
    case Check::kw:
        return "kw";
    case Check::lemma_identity:
        return "lemma_identity";
    case Check::pierra_lift:
        return "pierra_lift";
    case Check::compare:
        return "compare";
    case Check::bounds:
        return "bounds";
    case Check::routes:
        return "routes";
    case Check::alignment:
        return "alignment";
    }
    return "unknown";
}

std::optional<Check> check_from_string(std::string_view name)
{
    return lookup<Check>(name, kChecks);
}

ScenarioError::ScenarioError(std::string source, int line, std::string field, const std::string& message)
    : InputError([&] {
          // messages coming back through the parser are already prefixed
          if (source.empty()) {
              return field.empty() ? message : field + ": " + message;
          }
          std::string where = line > 0 ? fmt::format("{}:{}", source, line) : source;
          const bool prefixed = !field.empty() && message.rfind(field + ": ", 0) == 0;
          if (field.empty() || prefixed) {
              return where + ": " + message;
          }
          return where + ": " + field + ": " + message;
      }()),
      line_(line), field_(std::move(field))
{
}

void Scenario::validate() const
{
    if (name.empty()) {
        invalid("name", "must not be empty");
    }
    if (ambient_dim < 1) {
        invalid("ambient_dim", "must be at least 1");
    }
    if (k_max < 1) {
        invalid("k_max", fmt::format("must be at least 1 (got {})", k_max));
    }
    if (subspaces.empty()) {
        invalid("subspaces", "at least one subspace is required");
    }
    for (std::size_t i = 0; i < subspaces.size(); ++i) {
        const std::string field = fmt::format("subspaces[{}]", i);
        const SubspaceSpec& spec = subspaces[i];
        if (spec.spanning.rows() != ambient_dim) {
            invalid(field + ".span", "spanning vectors do not match ambient_dim");
        }
        if (mode == Mode::affine && !spec.anchor) {
            invalid(field + ".anchor", "anchor required in affine mode");
        }
        if (mode == Mode::linear && spec.anchor) {
            invalid(field + ".anchor", "anchor only allowed in affine mode");
        }
        if (spec.anchor && spec.anchor->size() != ambient_dim) {
            invalid(field + ".anchor",
                    fmt::format("anchor has dimension {}, ambient_dim is {}", spec.anchor->size(), ambient_dim));
        }
    }
    if (const auto* list = std::get_if<std::vector<Vector>>(&starts)) {
        if (list->empty()) {
            invalid("starts", "at least one start is required");
        }
        for (std::size_t i = 0; i < list->size(); ++i) {
            if ((*list)[i].size() != ambient_dim) {
                invalid(fmt::format("starts[{}]", i), fmt::format("start has dimension {}, ambient_dim is {}",
                                                                  (*list)[i].size(), ambient_dim));
            }
        }
    } else if (std::get<RandomStarts>(starts).count < 1) {
        invalid("starts.random", "must be at least 1");
    }

    const std::size_t r = subspaces.size();
    if (method == Method::product_alternating) {
        if (mode != Mode::linear) {
            invalid("method", "product_alternating requires linear mode");
        }
        if (r < 2) {
            invalid("method", "product_alternating needs at least two subspaces");
        }
    }
    for (Check c : checks) {
        const bool pair_only = c == Check::kw || c == Check::compare;
        if (pair_only && r != 2) {
            invalid("checks", fmt::format("check '{}' needs exactly two subspaces", to_string(c)));
        }
        if (!pair_only && c != Check::bounds && c != Check::lemma_identity && r < 2) {
            invalid("checks", fmt::format("check '{}' needs at least two subspaces", to_string(c)));
        }
    }
}

std::vector<Subspace> Scenario::linear_subspaces() const
{
    std::vector<Subspace> out;
    out.reserve(subspaces.size());
    for (const auto& spec : subspaces) {
        out.push_back(Subspace::from_spanning(spec.spanning));
    }
    return out;
}

std::vector<AffineSubspace> Scenario::affine_subspaces() const
{
    std::vector<AffineSubspace> out;
    out.reserve(subspaces.size());
    for (const auto& spec : subspaces) {
        const Vector anchor = spec.anchor ? *spec.anchor : Vector::Zero(ambient_dim);
        out.push_back(AffineSubspace::from_point_span(anchor, spec.spanning));
    }
    return out;
}

std::vector<Vector> Scenario::start_vectors() const
{
    if (const auto* list = std::get_if<std::vector<Vector>>(&starts)) {
        return *list;
    }
    const RandomStarts& random = std::get<RandomStarts>(starts);
    const Rng base(random.seed);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(random.count));
    for (int i = 0; i < random.count; ++i) {
        Rng stream = base.split(static_cast<std::uint64_t>(i));
        out.push_back(stream.unit_vector(ambient_dim));
    }
    return out;
}

std::uint64_t Scenario::seed() const
{
    if (const auto* random = std::get_if<RandomStarts>(&starts)) {
        return random->seed;
    }
    return 0;
}

bool operator==(const Scenario& a, const Scenario& b)
{
    if (a.name != b.name || a.ambient_dim != b.ambient_dim || a.mode != b.mode || a.method != b.method ||
        a.k_max != b.k_max || a.checks != b.checks || a.subspaces.size() != b.subspaces.size() ||
        a.starts.index() != b.starts.index()) {
        return false;
    }
    for (std::size_t i = 0; i < a.subspaces.size(); ++i) {
        const auto& x = a.subspaces[i];
        const auto& y = b.subspaces[i];
        if (x.spanning.rows() != y.spanning.rows() || x.spanning.cols() != y.spanning.cols() ||
            x.spanning != y.spanning || x.anchor.has_value() != y.anchor.has_value()) {
            return false;
        }
        if (x.anchor && (x.anchor->size() != y.anchor->size() || *x.anchor != *y.anchor)) {
            return false;
        }
    }
    if (const auto* ra = std::get_if<RandomStarts>(&a.starts)) {
        const auto& rb = std::get<RandomStarts>(b.starts);
        return ra->count == rb.count && ra->seed == rb.seed;
    }
    const auto& la = std::get<std::vector<Vector>>(a.starts);
    const auto& lb = std::get<std::vector<Vector>>(b.starts);
    if (la.size() != lb.size()) {
        return false;
    }
    for (std::size_t i = 0; i < la.size(); ++i) {
        if (la[i].size() != lb[i].size() || la[i] != lb[i]) {
            return false;
        }
    }
    return true;
}

Scenario parse_scenario(std::string_view text, std::string_view source)
{
    return Parser(std::string(source)).parse(text);
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open scenario file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

std::string format_scenario(const Scenario& s)
{
    std::string out;
    out += fmt::format("format: {}\n", kScenarioFormat);
    out += fmt::format("name: \"{}\"\n", escape_quoted(s.name));
    out += fmt::format("ambient_dim: {}\n", s.ambient_dim);
    out += fmt::format("mode: {}\n", to_string(s.mode));
    out += fmt::format("method: {}\n", to_string(s.method));
    out += fmt::format("k_max: {}\n", s.k_max);
    if (const auto* random = std::get_if<RandomStarts>(&s.starts)) {
        out += fmt::format("starts:\n  random: {}\n  seed: {}\n", random->count, random->seed);
    } else {
        out += "starts:\n";
        for (const auto& v : std::get<std::vector<Vector>>(s.starts)) {
            out += "  - " + format_vector(v) + "\n";
        }
    }
    out += "checks: [";
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        out += (i > 0 ? ", " : "") + std::string(to_string(s.checks[i]));
    }
    out += "]\n";
    out += "subspaces:\n";
    for (const auto& spec : s.subspaces) {
        if (spec.spanning.cols() == 0) {
            out += "  - span: []\n";
        } else {
            out += "  - span:\n";
            for (Index j = 0; j < spec.spanning.cols(); ++j) {
                out += "      - " + format_vector(spec.spanning.col(j)) + "\n";
            }
        }
        if (spec.anchor) {
            out += "    anchor: " + format_vector(*spec.anchor) + "\n";
        }
    }
    return out;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write scenario file " + path.string());
    }
    out << format_scenario(scenario);
    if (!out) {
        throw std::runtime_error("failed writing scenario file " + path.string());
    }
}

} // namespace projopt
