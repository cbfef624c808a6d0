#pragma once

// Executes a validated scenario and assembles the report:
//   {"schema_version", "scenario", "arithmetic", "seed", "results", "checks",
//    "tolerances", "status", "timing"}
// Everything except "timing" is a function of the scenario, the effective
// seed and the arithmetic mode.

#include <chrono>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "convexdiff/eps_subdiff.hpp"
#include "convexdiff/minimal_element.hpp"
#include "convexdiff/minimal_oracle.hpp"
#include "convexdiff/set_difference.hpp"
#include "convexdiff/workbench/parallel.hpp"
#include "convexdiff/workbench/scenario.hpp"
#include "convexdiff/workbench/suites.hpp"
#include "convexdiff/workbench/svg.hpp"

namespace convexdiff::workbench {

inline constexpr int kReportSchemaVersion = 1;

enum ExitCode { kOk = 0, kIoError = 1, kInvalid = 2, kFailed = 3 };

struct RunOptions {
  std::size_t jobs = 1;
};

struct RunResult {
  Json report;
  std::optional<std::string> svg;
  int exit_code = kOk;
};

// The report without its timing field, as compared for determinism.
inline std::string canonical_report(const Json& report) {
  Json copy = report;
  copy.erase("timing");
  return copy.dump(2) + "\n";
}

inline std::string report_text(const Json& report) { return report.dump(2) + "\n"; }

namespace detail {

template <class T>
struct Context {
  const Scenario& s;
  const Bindings<T>& b;
  const RunOptions& run;
  Json results = Json::object();
  Json checks = Json::array();
  Json tolerances = Json::object();
  std::vector<SvgItem> drawing;

  Context(const Scenario& sc, const Bindings<T>& bi, const RunOptions& ro) : s(sc), b(bi), run(ro) {}

  const Polytope<T>& poly(const std::string& n) const { return b.template get<Polytope<T>>(n); }
  const Vec<T>& vec(const std::string& n) const { return b.template get<Vec<T>>(n); }
  const T& scalar(const std::string& n) const { return b.template get<T>(n); }
  const PWLConvexFunction<T>& fn(const std::string& n) const { return b.template get<PWLConvexFunction<T>>(n); }
  std::size_t count(const std::string& n, long long fallback) const {
    return static_cast<std::size_t>(b.integer(n, fallback));
  }

  void check(const std::string& name, bool pass, Json measured = nullptr, Json tolerance = nullptr) {
    Json c{{"name", name}, {"pass", pass}};
    if (!measured.is_null()) c["measured"] = std::move(measured);
    if (!tolerance.is_null()) c["tolerance"] = std::move(tolerance);
    checks.push_back(std::move(c));
  }
  void draw(const Polytope<T>& x, const std::string& label, const std::string& role) {
    if (x.dim() == 2) drawing.push_back(svg_item(x, label, role));
  }
  void draw_inputs(std::initializer_list<const char*> names) {
    static const char* roles[] = {"minuend", "subtrahend", "input", "input"};
    std::size_t i = 0;
    for (const char* n : names) draw(poly(n), s.input_name(n), roles[std::min<std::size_t>(i++, 3)]);
  }
};

template <class T>
T tau() {
  return Num<T>::exact ? T(0) : T(Num<double>::tau);
}

template <class T>
Json number(const T& v) {
  return to_json(v);
}

// The default 101 points per axis up to the plane, fewer above it.
inline SamplingGrid sampling_grid(std::size_t d) {
  SamplingGrid g;
  if (d > 2) g.per_axis = d == 3 ? 41 : 15;
  return g;
}

template <class T>
std::vector<Vec<T>> selectors(const Context<T>& cx) {
  if (cx.b.has("selectors")) return cx.b.template get<std::vector<Vec<T>>>("selectors");
  std::vector<Vec<T>> out;
  if (cx.b.has("selector_fan")) {
    const auto& f = cx.b.template get<SelectorFan>("selector_fan");
    for (std::size_t k = 0; k < f.count; ++k) {
      double deg = f.count == 1 ? f.from_deg
                                : f.from_deg + (f.to_deg - f.from_deg) * static_cast<double>(k) / static_cast<double>(f.count - 1);
      out.push_back(grid_direction<T>(deg * std::numbers::pi / 180));
    }
    return out;
  }
  const auto n = cx.count("selector_count", 8);
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(grid_direction<T>(2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
  return out;
}

template <class T>
Json element_json(const MinimalElementReport<T>& r, const Collection<T>& c) {
  bool segment = r.element.size() == 2;
  if constexpr (!Num<T>::exact)
    segment = segment || (r.element.size() > 2 && planar::width(r.element.planar()) <= Num<double>::tau);
  return Json{{"selector", to_json(r.selector)},
              {"element", to_json(r.element)},
              {"vertices", r.element.size()},
              {"is_segment", segment},
              {"grid_size", r.grid_size},
              {"tolerance", to_json(r.tolerance)},
              {"certified_feasible", r.certified_feasible},
              {"sweeps", r.sweeps},
              {"directions", r.directions},
              {"compacted", r.compacted},
              {"selector_support", to_json(support_value(r.element, r.selector))},
              {"collection_support", to_json(support(c, r.selector))},
              {"selector_gap", to_json(r.selector_gap)},
              {"selector_gap_unit", r.selector_gap_unit},
              {"norm", norm(r.element)}};
}

template <class T>
void suite_results(Context<T>& cx, const SuiteReport& r, bool assert_properties) {
  cx.results = to_json(r);
  if (assert_properties)
    for (const auto& p : r.properties) cx.check(p.name, p.pass(), Json{{"failures", p.failures}, {"instances", p.instances}});
}

template <class T>
SuiteOptions suite_options(const Context<T>& cx, std::size_t instances) {
  SuiteOptions o;
  o.instances = cx.count("instances", static_cast<long long>(instances));
  o.seed = cx.s.seed;
  o.jobs = cx.run.jobs;
  return o;
}

template <class T>
void execute_op(Context<T>& cx) {
  const auto& op = cx.s.operation;
  const T tol = tau<T>();
  cx.tolerances["tau"] = number(tol);

  if (op == "hull") {
    auto h = Polytope<T>::hull(cx.b.template get<std::vector<Vec<T>>>("points"));
    cx.results["hull"] = to_json(h);
    cx.draw(h, "hull", "element");
  } else if (op == "support") {
    auto r = support(cx.poly("X"), cx.vec("p"));
    cx.results = Json{{"value", number(r.value)}, {"face", to_json(r.face)}};
    cx.draw_inputs({"X"});
    cx.draw(r.face, "face", "element");
  } else if (op == "minkowski-sum") {
    auto z = minkowski_sum(cx.poly("X"), cx.poly("Y"));
    cx.results["sum"] = to_json(z);
    cx.draw_inputs({"X", "Y"});
    cx.draw(z, "X + Y", "element");
  } else if (op == "scale") {
    auto z = scale(cx.poly("X"), cx.scalar("alpha"));
    cx.results["scaled"] = to_json(z);
    cx.draw_inputs({"X"});
    cx.draw(z, "alpha X", "element");
  } else if (op == "contains-point") {
    cx.results["contains"] = contains_point(cx.poly("X"), cx.vec("v"));
    cx.draw_inputs({"X"});
    cx.draw(Polytope<T>::point(cx.vec("v")), "v", "element");
  } else if (op == "contains-set") {
    cx.results["X_in_Y"] = contains_set(cx.poly("X"), cx.poly("Y"));
    cx.draw_inputs({"X", "Y"});
  } else if (op == "intersect") {
    auto z = intersect(cx.poly("X"), cx.poly("Y"));
    cx.results["intersection"] = to_json(z);
    cx.results["empty"] = !z;
    cx.draw_inputs({"X", "Y"});
    if (z) cx.draw(*z, "X ∩ Y", "element");
  } else if (op == "hausdorff") {
    const auto &x = cx.poly("X"), &y = cx.poly("Y");
    cx.results["distance"] = hausdorff(x, y);
    if (x.dim() <= 2) cx.results["distance_sq"] = number(hausdorff_sq(x, y));
    cx.draw_inputs({"X", "Y"});
  } else if (op == "norm") {
    cx.results = Json{{"norm", norm(cx.poly("X"))}, {"norm_sq", number(norm_sq(cx.poly("X")))}};
    cx.draw_inputs({"X"});
  } else if (op == "cover-diff" || op == "erode-diff") {
    const auto &x = cx.poly("X"), &y = cx.poly("Y");
    const bool cover = op == "cover-diff";
    auto z = cover ? cover_diff(x, y) : erode_diff(x, y);
    cx.results["difference"] = to_json(z);
    cx.results["empty"] = !z;
    if (z) {
      if (cover) cx.check("covering: X in Z + Y", contains_set(x, minkowski_sum(*z, y)));
      else cx.check("erosion: Z + Y in X", contains_set(minkowski_sum(*z, y), x));
    }
    cx.draw_inputs({"X", "Y"});
    if (z) cx.draw(*z, cover ? "cover difference" : "erosion", "element");
  } else if (op == "sign-discrepancy") {
    const auto &x = cx.poly("X"), &y = cx.poly("Y");
    auto sd = compare_intersection_forms(x, y, probe_grid(x, y, static_cast<long long>(cx.count("radius", 4)),
                                                          static_cast<long long>(cx.count("steps", 8))));
    cx.results = Json{{"definitional_form", to_json(sd.definitional)},
                      {"reflected_form", to_json(sd.reflected)},
                      {"probes", sd.probes},
                      {"definitional_mismatches", sd.definitional_mismatches},
                      {"reflected_mismatches", sd.reflected_mismatches},
                      {"witness", sd.witness ? to_json(*sd.witness) : Json(nullptr)}};
    if (sd.witness) cx.results["witness_covered_by_definition"] = covers(x, y, *sd.witness);
    cx.check("definitional form matches membership", sd.definitional_mismatches == 0,
             Json{{"mismatches", sd.definitional_mismatches}});
    cx.draw_inputs({"X", "Y"});
    if (sd.definitional) cx.draw(*sd.definitional, "intersection of v - Y", "element");
    if (sd.reflected) cx.draw(*sd.reflected, "intersection of Y - v", "element");
  } else if (op == "collection-support") {
    auto c = make(cx.poly("X"), cx.poly("Y"));
    cx.results["support"] = number(support(c, cx.vec("p")));
    cx.draw_inputs({"X", "Y"});
  } else if (op == "collection-equivalent") {
    auto a = make(cx.poly("X"), cx.poly("Y")), b = make(cx.poly("Z"), cx.poly("W"));
    cx.results = Json{{"equivalent", is_equivalent(a, b)}, {"first_is_zero", is_zero(a)}, {"second_is_zero", is_zero(b)}};
  } else if (op == "feasible") {
    auto c = make(cx.poly("X"), cx.poly("Y"));
    cx.results["feasible"] = feasible(cx.poly("Z"), c);
    cx.draw_inputs({"X", "Y", "Z"});
  } else if (op == "gmp-minimal") {
    auto c = make(cx.poly("X"), cx.poly("Y"));
    ExtractOptions<T> eo;
    eo.grid = cx.count("grid", 64);
    eo.tolerance = cx.b.has("tolerance") ? cx.scalar("tolerance") : tol;
    cx.tolerances["tau"] = number(eo.tolerance);
    const auto sels = selectors(cx);
    std::vector<std::optional<MinimalElementReport<T>>> reps(sels.size());
    parallel_for(sels.size(), cx.run.jobs, [&](std::size_t i) { reps[i] = minimal_element(c, sels[i], eo); });
    Json elems = Json::array();
    std::vector<Polytope<T>> distinct;
    bool feasible_all = true, gap_ok = true;
    std::size_t segments = 0;
    for (const auto& r : reps) {
      auto j = element_json(*r, c);
      segments += j["is_segment"].template get<bool>();
      elems.push_back(std::move(j));
      feasible_all = feasible_all && r->certified_feasible;
      gap_ok = gap_ok && sgn(r->selector_gap) >= 0;
      if (std::none_of(distinct.begin(), distinct.end(), [&](const Polytope<T>& z) {
            return is_equivalent(Collection<T>::of_set(z), Collection<T>::of_set(r->element));
          }))
        distinct.push_back(r->element);
    }
    cx.results = Json{{"trivial_element", to_json(trivial_element(c))},
                      {"elements", std::move(elems)},
                      {"pairwise_non_equivalent", distinct.size()},
                      {"segments", segments}};
    cx.check("every element certified feasible", feasible_all);
    cx.check("selector support at or above the collection support", gap_ok);
    cx.draw_inputs({"X", "Y"});
    for (std::size_t i = 0; i < reps.size(); ++i) cx.draw(reps[i]->element, "element " + std::to_string(i), "element");
  } else if (op == "minimal-oracle") {
    auto c = make(cx.poly("X"), cx.poly("Y"));
    OracleOptions oo;
    oo.orders = cx.count("orders", 16);
    oo.budget = cx.count("budget", 200000);
    oo.seed = cx.s.seed;
    auto o = minimal_oracle(c, cx.count("grid", 16), cx.count("ladder", 8), oo);
    const auto z0 = trivial_element(c);
    Json cands = Json::array();
    bool inside = true, feas = true;
    for (const auto& z : o.candidates) {
      cands.push_back(to_json(z));
      inside = inside && contains_set(z, z0);
      feas = feas && feasible(z, c);
    }
    cx.results = Json{{"candidates", std::move(cands)}, {"directions", o.directions.size()}, {"feasibility_checks", o.checks}};
    cx.check("candidates feasible", feas);
    cx.check("candidates inside X + (-Y)", inside);
    cx.draw_inputs({"X", "Y"});
    for (std::size_t i = 0; i < o.candidates.size(); ++i) cx.draw(o.candidates[i], "candidate " + std::to_string(i), "element");
  } else if (op == "collection-norm") {
    const auto &x = cx.poly("X"), &y = cx.poly("Y");
    ExtractOptions<T> eo;
    eo.grid = cx.count("grid", 64);
    eo.tolerance = tol;
    auto nb = collection_norm(make(x, y), cx.count("selector_count", 16), eo);
    cx.results = Json{{"lower", nb.lower},
                      {"upper", nb.upper},
                      {"lower_sq", number(nb.lower_sq)},
                      {"upper_sq", number(nb.upper_sq)},
                      {"selectors", nb.selectors}};
    cx.check("lower <= upper", cmp(nb.lower_sq, nb.upper_sq) <= 0);
    cx.check("upper <= ||X|| + ||Y||", sqrt_sum_bound(nb.upper_sq, norm_sq(x), norm_sq(y)));
    cx.draw_inputs({"X", "Y"});
  } else if (op == "eval") {
    auto e = eval(cx.fn("f"), cx.vec("x"));
    cx.results = Json{{"value", number(e.value)}, {"active", e.active}};
  } else if (op == "eps-subdiff") {
    const auto &f = cx.fn("f");
    const auto &x = cx.vec("x");
    auto d = eps_subdiff(f, x, cx.scalar("eps"));
    cx.results = Json{{"subdifferential", to_json(d)}, {"max_gap", number(max_gap(f, x))}};
    const auto samples = oracle_samples(f, x, sampling_grid(x.dim()));
    bool ok = true;
    for (const auto& g : d.vertices()) ok = ok && eps_subdiff_oracle(f, x, cx.scalar("eps"), g, samples);
    cx.check("every vertex satisfies the defining inequality at the sampled points", ok);
    cx.draw(d, "eps-subdifferential", "element");
  } else if (op == "eps-oracle") {
    const auto &f = cx.fn("f");
    const auto &x = cx.vec("x");
    const auto samples = oracle_samples(f, x, sampling_grid(x.dim()));
    bool member = eps_subdiff_oracle(f, x, cx.scalar("eps"), cx.vec("g"), samples);
    cx.results = Json{{"inequality_holds", member},
                      {"in_closed_form", contains_point(eps_subdiff(f, x, cx.scalar("eps")), cx.vec("g"))},
                      {"samples", samples.size()}};
  } else if (op == "graph-convexity") {
    bool ok = graph_convexity_check(cx.fn("f"), cx.vec("x"), cx.scalar("eps1"), cx.scalar("eps2"), cx.scalar("t"));
    cx.results["contained"] = ok;
    cx.check("(1-t) D(eps1) + t D(eps2) in D((1-t) eps1 + t eps2)", ok);
  } else if (op == "lipschitz-probe") {
    const double probe_tau = Num<double>::tau;
    auto r = lipschitz_probe(cx.fn("f"), cx.vec("x"), cx.scalar("eps"), cx.scalar("upsilon"), cx.count("pairs", 200),
                             cx.s.seed, probe_tau);
    cx.results = Json{{"L_emp", r.l_emp}, {"L_bound", r.l_bound}, {"violations", r.violations}, {"pairs", r.pairs},
                      {"degenerate_pairs", r.degenerate}};
    cx.tolerances["lipschitz_tau"] = probe_tau;
    cx.check("no violations of the Lipschitz bound", r.violations == 0, Json(r.violations), Json(probe_tau));
    cx.check("L_emp <= L_bound", r.l_emp <= r.l_bound, Json(r.l_emp), Json(r.l_bound));
  } else if (op == "lemma-suite") {
    auto o = suite_options(cx, 100);
    o.grid = cx.count("grid", 16);
    suite_results(cx, lemma_suite<T>(o), true);
  } else if (op == "containment-suite") {
    auto o = suite_options(cx, 50);
    o.selectors = cx.count("selector_count", 8);
    suite_results(cx, containment_suite<T>(o), true);
  } else if (op == "mp-suite") {
    suite_results(cx, mp_suite<T>(suite_options(cx, 100)), true);
  } else if (op == "nested-exploration") {
    auto o = suite_options(cx, 20);
    o.selectors = cx.count("selector_count", 8);
    o.grid = cx.count("grid", 32);
    suite_results(cx, nested_exploration<T>(o), false);
  } else {
    throw InvalidArgument("operation " + op + " has no runner");
  }
}

template <class T>
RunResult execute_typed(const Scenario& s, const RunOptions& opt) {
  std::vector<Diagnostic> diags;
  auto b = bind_inputs<T>(s, diags);
  semantic_check(s, b, diags);
  if (!diags.empty()) throw ValidationFailed(std::move(diags));

  Context<T> cx{s, b, opt};
  cx.tolerances["arithmetic"] = to_string(s.arithmetic);
  RunResult out;
  std::string status = "ok";
  Json error = nullptr;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    execute_op(cx);
  } catch (const BudgetExceeded& e) {
    status = "budget_exceeded";
    error = e.what();
    out.exit_code = kFailed;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool checks_pass =
      std::all_of(cx.checks.begin(), cx.checks.end(), [](const Json& c) { return c["pass"].template get<bool>(); });
  if (status == "ok" && !checks_pass) {
    status = "checks_failed";
    out.exit_code = kFailed;
  }
  out.report = Json{{"schema_version", kReportSchemaVersion},
                    {"scenario", s.document},
                    {"operation", s.operation},
                    {"arithmetic", to_string(s.arithmetic)},
                    {"seed", s.seed},
                    {"seed_source", s.seed_source},
                    {"status", status},
                    {"error", error},
                    {"results", std::move(cx.results)},
                    {"checks", std::move(cx.checks)},
                    {"tolerances", std::move(cx.tolerances)},
                    {"timing", {{"seconds", seconds}, {"jobs", opt.jobs}}}};
  if (s.svg_path) out.svg = render_svg(cx.drawing);
  return out;
}

}  // namespace detail

inline RunResult execute(const Scenario& s, const RunOptions& opt = {}) {
  return s.arithmetic == Arithmetic::rational ? detail::execute_typed<Rational>(s, opt) : detail::execute_typed<double>(s, opt);
}

}  // namespace convexdiff::workbench
