#pragma once

// Scenario files: schema, typed input bindings and validation.
//
// {
//   "version": 1,
//   "arithmetic": "rational" | "double",
//   "seed": 7,
//   "operation": "gmp-minimal",
//   "inputs": {"A": {"dim": 2, "vertices": [...]}, "grid": 64, ...},
//   "args": {"X": "A"},                  optional parameter -> input renames
//   "output": {"report": "fig1.json", "svg": "fig1.svg"}
// }
//
// A parameter reads the input of the same name unless "args" maps it to
// another input.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "convexdiff/workbench/json_io.hpp"

namespace convexdiff::workbench {

inline constexpr int kScenarioVersion = 1;

enum class Kind { polytope, function, vector, vectors, scalar, integer, fan };

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::polytope: return "polytope";
    case Kind::function: return "function";
    case Kind::vector: return "vector";
    case Kind::vectors: return "vector list";
    case Kind::scalar: return "scalar";
    case Kind::integer: return "integer";
    case Kind::fan: return "selector fan";
  }
  return "?";
}

struct Param {
  std::string name;
  Kind kind;
  bool required = true;
  long long lo = 0, hi = 0;  // integer range
};

struct OperationSpec {
  std::string name;
  std::vector<Param> params;
  bool drawable = false;  // emits planar sets for SVG output
};

namespace detail {
inline Param req(std::string n, Kind k) { return {std::move(n), k, true}; }
inline Param opt(std::string n, Kind k) { return {std::move(n), k, false}; }
inline Param count(std::string n, long long lo, long long hi) { return {std::move(n), Kind::integer, false, lo, hi}; }
}  // namespace detail

inline const std::vector<OperationSpec>& operations() {
  using namespace detail;
  using K = Kind;
  static const std::vector<OperationSpec> ops = {
      {"hull", {req("points", K::vectors)}, true},
      {"support", {req("X", K::polytope), req("p", K::vector)}, true},
      {"minkowski-sum", {req("X", K::polytope), req("Y", K::polytope)}, true},
      {"scale", {req("X", K::polytope), req("alpha", K::scalar)}, true},
      {"contains-point", {req("X", K::polytope), req("v", K::vector)}, true},
      {"contains-set", {req("X", K::polytope), req("Y", K::polytope)}, true},
      {"intersect", {req("X", K::polytope), req("Y", K::polytope)}, true},
      {"hausdorff", {req("X", K::polytope), req("Y", K::polytope)}, true},
      {"norm", {req("X", K::polytope)}, true},
      {"cover-diff", {req("X", K::polytope), req("Y", K::polytope)}, true},
      {"erode-diff", {req("X", K::polytope), req("Y", K::polytope)}, true},
      {"sign-discrepancy", {req("X", K::polytope), req("Y", K::polytope), count("radius", 1, 1000), count("steps", 1, 200)}, true},
      {"collection-support", {req("X", K::polytope), req("Y", K::polytope), req("p", K::vector)}, true},
      {"collection-equivalent",
       {req("X", K::polytope), req("Y", K::polytope), req("Z", K::polytope), req("W", K::polytope)},
       false},
      {"feasible", {req("X", K::polytope), req("Y", K::polytope), req("Z", K::polytope)}, true},
      {"gmp-minimal",
       {req("X", K::polytope), req("Y", K::polytope), opt("selectors", K::vectors), opt("selector_fan", K::fan),
        count("selector_count", 1, 4096), count("grid", 8, 65536), opt("tolerance", K::scalar)},
       true},
      {"minimal-oracle",
       {req("X", K::polytope), req("Y", K::polytope), count("grid", 3, 24), count("ladder", 3, 12), count("orders", 0, 1024),
        count("budget", 1, 100000000)},
       true},
      {"collection-norm",
       {req("X", K::polytope), req("Y", K::polytope), count("selector_count", 1, 4096), count("grid", 8, 65536)},
       true},
      {"eval", {req("f", K::function), req("x", K::vector)}, false},
      {"eps-subdiff", {req("f", K::function), req("x", K::vector), req("eps", K::scalar)}, true},
      {"eps-oracle", {req("f", K::function), req("x", K::vector), req("eps", K::scalar), req("g", K::vector)}, false},
      {"graph-convexity",
       {req("f", K::function), req("x", K::vector), req("eps1", K::scalar), req("eps2", K::scalar), req("t", K::scalar)},
       false},
      {"lipschitz-probe",
       {req("f", K::function), req("x", K::vector), req("eps", K::scalar), req("upsilon", K::scalar),
        count("pairs", 1, 1000000)},
       false},
      {"lemma-suite", {count("instances", 1, 100000), count("grid", 8, 65536)}, false},
      {"containment-suite", {count("instances", 1, 100000), count("selector_count", 1, 4096)}, false},
      {"mp-suite", {count("instances", 1, 100000)}, false},
      {"nested-exploration", {count("instances", 1, 100000), count("selector_count", 1, 4096), count("grid", 8, 65536)},
       false},
  };
  return ops;
}

inline const OperationSpec* find_operation(const std::string& name) {
  for (const auto& op : operations())
    if (op.name == name) return &op;
  return nullptr;
}

struct SelectorFan {
  double from_deg = 0, to_deg = 0;
  std::size_t count = 0;
};

struct Scenario {
  Json document;
  int version = kScenarioVersion;
  Arithmetic arithmetic = Arithmetic::rational;
  std::uint64_t seed = 0;
  std::string seed_source = "scenario";
  std::string operation;
  std::map<std::string, std::string> args;
  std::string report_path;
  std::optional<std::string> svg_path;

  std::string input_name(const std::string& param) const {
    auto it = args.find(param);
    return it == args.end() ? param : it->second;
  }
  const Json* input(const std::string& param) const {
    const auto& in = document["inputs"];
    auto name = input_name(param);
    return in.contains(name) ? &in[name] : nullptr;
  }
  std::string input_path(const std::string& param) const { return "/inputs/" + input_name(param); }
  const OperationSpec& spec() const { return *find_operation(operation); }
};

class ValidationFailed : public InvalidArgument {
 public:
  explicit ValidationFailed(std::vector<Diagnostic> diags)
      : InvalidArgument(diags.empty() ? "invalid scenario" : diags[0].str()), diags_(std::move(diags)) {}
  ValidationFailed(std::string path, std::string message)
      : ValidationFailed(std::vector<Diagnostic>{{std::move(path), std::move(message)}}) {}
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

template <class T>
using Value = std::variant<Polytope<T>, PWLConvexFunction<T>, Vec<T>, std::vector<Vec<T>>, T, long long, SelectorFan>;

// Typed parameter values of one scenario in scalar type T.
template <class T>
class Bindings {
 public:
  template <class V>
  const V& get(const std::string& name) const {
    return std::get<V>(values_.at(name));
  }
  bool has(const std::string& name) const { return values_.count(name) != 0; }
  long long integer(const std::string& name, long long fallback) const {
    return has(name) ? get<long long>(name) : fallback;
  }
  void set(const std::string& name, Value<T> v) { values_.insert_or_assign(name, std::move(v)); }

 private:
  std::map<std::string, Value<T>> values_;
};

namespace detail {

inline SelectorFan parse_fan(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected {\"from_deg\", \"to_deg\", \"count\"}");
  for (const auto& [key, value] : j.items())
    if (key != "from_deg" && key != "to_deg" && key != "count") throw ParseError(child(path, key), "unknown fan field");
  for (const char* key : {"from_deg", "to_deg", "count"})
    if (!j.contains(key)) throw ParseError(path, std::string("missing field \"") + key + "\"");
  SelectorFan f;
  for (const char* key : {"from_deg", "to_deg"})
    if (!j[key].is_number()) throw ParseError(child(path, key), "expected a number of degrees");
  f.from_deg = j["from_deg"].get<double>();
  f.to_deg = j["to_deg"].get<double>();
  f.count = static_cast<std::size_t>(parse_integer(j["count"], child(path, "count"), 1, 4096));
  return f;
}

template <class T>
Value<T> parse_value(const Param& p, const Json& j, const std::string& path) {
  switch (p.kind) {
    case Kind::polytope: return parse_polytope<T>(j, path);
    case Kind::function: return parse_function<T>(j, path);
    case Kind::vector: return parse_vector<T>(j, path);
    case Kind::vectors: return parse_vector_list<T>(j, path);
    case Kind::scalar: return parse_scalar<T>(j, path);
    case Kind::integer: return parse_integer(j, path, p.lo, p.hi);
    case Kind::fan: return parse_fan(j, path);
  }
  throw ParseError(path, "unsupported parameter kind");
}

}  // namespace detail

// Parses every parameter of the scenario's operation; errors are appended to diags.
template <class T>
Bindings<T> bind_inputs(const Scenario& s, std::vector<Diagnostic>& diags) {
  Bindings<T> b;
  for (const auto& p : s.spec().params) {
    const Json* j = s.input(p.name);
    if (!j) {
      if (p.required) diags.push_back({s.input_path(p.name), "missing required " + std::string(to_string(p.kind)) + " input"});
      continue;
    }
    try {
      b.set(p.name, detail::parse_value<T>(p, *j, s.input_path(p.name)));
    } catch (const ParseError& e) {
      diags.push_back(e.diagnostic());
    } catch (const Error& e) {
      diags.push_back({s.input_path(p.name), e.what()});
    }
  }
  return b;
}

// Semantic checks that need typed values: dimensions and parameter ranges.
template <class T>
void semantic_check(const Scenario& s, const Bindings<T>& b, std::vector<Diagnostic>& diags) {
  const auto& op = s.spec();
  auto fail = [&](const std::string& param, std::string msg) { diags.push_back({s.input_path(param), std::move(msg)}); };
  auto dim_of = [&](const Param& p) -> std::size_t {
    if (!b.has(p.name)) return 0;
    switch (p.kind) {
      case Kind::polytope: return b.template get<Polytope<T>>(p.name).dim();
      case Kind::function: return b.template get<PWLConvexFunction<T>>(p.name).dim();
      case Kind::vector: return b.template get<Vec<T>>(p.name).dim();
      case Kind::vectors: return b.template get<std::vector<Vec<T>>>(p.name)[0].dim();
      default: return 0;
    }
  };

  std::size_t d = 0;
  std::string first;
  for (const auto& p : op.params) {
    auto pd = dim_of(p);
    if (pd == 0) continue;
    if (d == 0) {
      d = pd;
      first = p.name;
    } else if (pd != d) {
      fail(p.name, "dimension " + std::to_string(pd) + " does not match dimension " + std::to_string(d) + " of input " +
                       s.input_name(first));
    }
  }

  const std::set<std::string> planar_only = {"minimal-oracle", "collection-norm"};
  const std::set<std::string> bounded = {"intersect", "cover-diff", "erode-diff", "gmp-minimal", "sign-discrepancy"};
  if (d != 0 && planar_only.count(op.name) && d != 2)
    fail(first, op.name + " is only available in dimension 2, got " + std::to_string(d));
  if (d > static_cast<std::size_t>(kMaxIntersectDim) && bounded.count(op.name))
    fail(first, op.name + " is limited to dimension " + std::to_string(kMaxIntersectDim) + ", got " + std::to_string(d));
  if (op.name == "sign-discrepancy" && d != 0 && d != 2) fail(first, "sign-discrepancy probes are planar, got dimension " + std::to_string(d));
  if (s.svg_path && op.drawable && d != 0 && d != 2)
    diags.push_back({"/output/svg", "SVG output needs planar sets, got dimension " + std::to_string(d)});
  if (s.svg_path && !op.drawable) diags.push_back({"/output/svg", "operation " + op.name + " produces no sets to draw"});

  auto scalar = [&](const std::string& n) -> const T* { return b.has(n) ? &b.template get<T>(n) : nullptr; };
  for (const char* n : {"eps", "eps1", "eps2"})
    if (auto v = scalar(n); v && sgn(*v) < 0) fail(n, std::string(n) + " must be nonnegative");
  if (auto t = scalar("t"); t && (sgn(*t) < 0 || cmp(*t, T(1)) > 0)) fail("t", "t must lie in [0, 1]");
  if (auto u = scalar("upsilon")) {
    auto e = scalar("eps");
    if (sgn(*u) <= 0) fail("upsilon", "upsilon must be positive");
    else if (e && cmp(*u, *e) >= 0) fail("upsilon", "upsilon must be smaller than eps");
  }
  if (auto tau = scalar("tolerance")) {
    if (sgn(*tau) < 0 || (!Num<T>::exact && !(*tau > T(0))))
      fail("tolerance", Num<T>::exact ? "tolerance must be nonnegative" : "tolerance must be positive in double mode");
  }

  if (op.name == "gmp-minimal") {
    int given = b.has("selectors") + b.has("selector_fan") + b.has("selector_count");
    if (given != 1) diags.push_back({"/inputs", "gmp-minimal needs exactly one of selectors, selector_fan, selector_count"});
    if (b.has("selectors"))
      for (std::size_t i = 0; i < b.template get<std::vector<Vec<T>>>("selectors").size(); ++i)
        if (b.template get<std::vector<Vec<T>>>("selectors")[i].is_zero())
          diags.push_back({child(s.input_path("selectors"), i), "selector must be nonzero"});
    if (d != 2 && (b.has("selector_fan") || b.has("selector_count")))
      fail(first, "selector fans and counts are planar; give explicit selectors in dimension " + std::to_string(d));
  }
  if (op.name == "collection-support" && b.has("p") && b.template get<Vec<T>>("p").is_zero())
    fail("p", "direction must be nonzero");
}

struct ScenarioOverrides {
  std::optional<Arithmetic> arithmetic;
  std::optional<std::uint64_t> seed;
};

inline std::optional<Arithmetic> parse_arithmetic(const std::string& s) {
  if (s == "rational") return Arithmetic::rational;
  if (s == "double") return Arithmetic::floating;
  return std::nullopt;
}

// Structural and semantic validation; returns the scenario or throws ValidationFailed.
inline Scenario load_scenario(const Json& doc, const ScenarioOverrides& ov = {}) {
  std::vector<Diagnostic> diags;
  Scenario s;
  s.document = doc;
  if (!doc.is_object()) throw ValidationFailed("", "scenario must be a JSON object");
  static const std::set<std::string> known = {"version", "arithmetic", "seed", "operation", "inputs", "args", "output", "description"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) diags.push_back({"/" + key, "unknown top-level field"});

  for (const char* key : {"version", "arithmetic", "seed", "operation", "inputs", "output"})
    if (!doc.contains(key)) diags.push_back({"", std::string("missing field \"") + key + "\""});

  if (doc.contains("version")) {
    if (!doc["version"].is_number_integer() || doc["version"].get<long long>() != kScenarioVersion)
      diags.push_back({"/version", "unsupported version (expected " + std::to_string(kScenarioVersion) + ")"});
  }
  if (doc.contains("arithmetic")) {
    auto a = doc["arithmetic"].is_string() ? parse_arithmetic(doc["arithmetic"].get<std::string>()) : std::nullopt;
    if (!a) diags.push_back({"/arithmetic", "expected \"rational\" or \"double\""});
    else s.arithmetic = *a;
  }
  if (ov.arithmetic) s.arithmetic = *ov.arithmetic;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<std::int64_t>() < 0) diags.push_back({"/seed", "expected an unsigned integer"});
    else s.seed = doc["seed"].get<std::uint64_t>();
  }
  if (ov.seed) {
    s.seed = *ov.seed;
    s.seed_source = "environment";
  }
  if (doc.contains("operation")) {
    if (!doc["operation"].is_string() || !find_operation(doc["operation"].get<std::string>())) {
      std::string names;
      for (const auto& op : operations()) names += (names.empty() ? "" : ", ") + op.name;
      diags.push_back({"/operation", "unknown operation (one of: " + names + ")"});
    } else {
      s.operation = doc["operation"].get<std::string>();
    }
  }
  if (doc.contains("inputs") && !doc["inputs"].is_object()) diags.push_back({"/inputs", "expected an object of named inputs"});
  if (doc.contains("args")) {
    const auto& a = doc["args"];
    if (!a.is_object()) {
      diags.push_back({"/args", "expected an object mapping parameters to input names"});
    } else {
      for (const auto& [key, value] : a.items()) {
        if (!value.is_string()) {
          diags.push_back({"/args/" + key, "expected an input name"});
          continue;
        }
        s.args[key] = value.get<std::string>();
        if (doc.contains("inputs") && doc["inputs"].is_object() && !doc["inputs"].contains(value.get<std::string>()))
          diags.push_back({"/args/" + key, "references undefined input \"" + value.get<std::string>() + "\""});
        if (!s.operation.empty()) {
          const auto& ps = s.spec().params;
          if (std::none_of(ps.begin(), ps.end(), [&](const Param& p) { return p.name == key; }))
            diags.push_back({"/args/" + key, "operation " + s.operation + " has no parameter \"" + key + "\""});
        }
      }
    }
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (!o.is_object() || !o.contains("report") || !o["report"].is_string() || o["report"].get<std::string>().empty()) {
      diags.push_back({"/output", "expected {\"report\": path, \"svg\": optional path}"});
    } else {
      s.report_path = o["report"].get<std::string>();
      for (const auto& [key, value] : o.items())
        if (key != "report" && key != "svg") diags.push_back({"/output/" + key, "unknown output field"});
      if (o.contains("svg")) {
        if (!o["svg"].is_string() || o["svg"].get<std::string>().empty()) diags.push_back({"/output/svg", "expected a path"});
        else s.svg_path = o["svg"].get<std::string>();
      }
    }
  }
  if (!diags.empty() || s.operation.empty() || !doc["inputs"].is_object()) throw ValidationFailed(std::move(diags));

  if (s.arithmetic == Arithmetic::rational) {
    auto b = bind_inputs<Rational>(s, diags);
    semantic_check(s, b, diags);
  } else {
    auto b = bind_inputs<double>(s, diags);
    semantic_check(s, b, diags);
  }
  if (!diags.empty()) throw ValidationFailed(std::move(diags));
  return s;
}

inline std::vector<Diagnostic> validate(const Json& doc, const ScenarioOverrides& ov = {}) {
  try {
    load_scenario(doc, ov);
  } catch (const ValidationFailed& e) {
    return e.diagnostics();
  }
  return {};
}

}  // namespace convexdiff::workbench
