// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <scenarios-dir>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "convexdiff/random.hpp"
#include "convexdiff/workbench/app.hpp"

using namespace convexdiff;
using namespace convexdiff::workbench;
using Q = Rational;
using V = Vec<Q>;
using P = Polytope<Q>;

namespace {

constexpr double kTau = 1e-9;
constexpr double kGapThreshold = 1e-2;
constexpr double kOracleStep = 1e-3;
constexpr double kLipschitzSlack = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << std::fixed
            << std::setprecision(2) << secs << " s]" << std::endl;
  std::cout.unsetf(std::ios::fixed);
}

std::string suite_summary(const SuiteReport& r) {
  std::ostringstream ss;
  for (const auto& p : r.properties) ss << p.name << " " << p.failures << "/" << p.instances << "; ";
  auto s = ss.str();
  return s.empty() ? s : s.substr(0, s.size() - 2);
}

Outcome suite_outcome(const SuiteReport& r) { return {r.pass(), "failures " + suite_summary(r)}; }

Json load(const std::filesystem::path& dir, const std::string& name) {
  return Json::parse(read_file(dir / (name + ".json")));
}

// Selector gap: maximum over pairs and selectors, for each grid size.
Outcome selector_gap_convergence() {
  const std::vector<std::size_t> grids = {16, 64, 256};
  Rng rng(2024);
  std::vector<Collection<Q>> pairs;
  for (int i = 0; i < 20; ++i) {
    auto x = random_polygon<Q>(rng);
    auto y = random_polygon<Q>(rng);
    pairs.push_back(make(x, y));
  }
  std::vector<V> sel;
  for (int k = 0; k < 32; ++k) sel.push_back(grid_direction<Q>(2 * std::numbers::pi * k / 32.0));
  std::vector<double> max_gap;
  bool nonnegative = true;
  for (auto m : grids) {
    double worst = 0;
    for (const auto& c : pairs)
      for (const auto& s : sel) {
        auto rep = minimal_element(c, s, m, Q(0));
        if (rep.selector_gap < Q(0)) nonnegative = false;
        worst = std::max(worst, rep.selector_gap_unit);
      }
    max_gap.push_back(worst);
  }
  bool monotone = max_gap[0] >= max_gap[1] && max_gap[1] >= max_gap[2];
  std::ostringstream ss;
  ss << "max gap at m=16/64/256: " << max_gap[0] << " / " << max_gap[1] << " / " << max_gap[2]
     << ", all gaps >= 0: " << (nonnegative ? "yes" : "no");
  return {nonnegative && monotone && max_gap[2] < kGapThreshold, ss.str()};
}

Outcome lemma_properties() {
  SuiteOptions o;
  o.instances = 100;
  o.seed = 7;
  return suite_outcome(lemma_suite<Q>(o));
}

Outcome containment() {
  SuiteOptions o;
  o.instances = 50;
  o.seed = 13;
  return suite_outcome(containment_suite<Q>(o));
}

Outcome norm_identities() {
  Rng rng(31);
  std::size_t bad_left = 0, bad_right = 0;
  for (int i = 0; i < 50; ++i) {
    auto x = random_polygon<Q>(rng);
    const auto zero = P::origin(2);
    const Q n = norm_sq(x);
    auto left = collection_norm(make(x, zero), 8);
    auto right = collection_norm(make(zero, x), 8);
    if (left.lower_sq != n || left.upper_sq != n) ++bad_left;
    if (right.lower_sq != n || right.upper_sq != n) ++bad_right;
  }
  return {bad_left == 0 && bad_right == 0, "mismatches |X/0| " + std::to_string(bad_left) + "/50, |0/X| " +
                                               std::to_string(bad_right) + "/50"};
}

Outcome mp_properties() {
  SuiteOptions o;
  o.instances = 100;
  o.seed = 17;
  auto r = mp_suite<Q>(o);
  const auto& sd = r.details["sign_discrepancy"];
  const bool witness = sd.contains("witness") && !sd["witness"].is_null();
  auto detail = "failures " + suite_summary(r) + "; reflected-form mismatches " +
                std::to_string(sd["pairs_with_reflected_mismatch"].get<std::size_t>());
  if (witness) detail += "; witness " + sd["witness"].dump();
  return {r.pass() && witness, detail};
}

Outcome eps_closed_form() {
  const PWLConvexFunction<Q> f({{V{Q(1)}, Q(0)}, {V{Q(-1)}, Q(0)}});
  const V x{Q(1)};
  const Q step = Q(1) / Q(static_cast<long long>(std::lround(1 / kOracleStep)));
  std::vector<Q> eps = {Q(0), Q(1) / Q(2), Q(1), Q(2), Q(3)};
  std::size_t bad = 0;
  std::ostringstream ss;
  for (const auto& e : eps) {
    const Q lo = std::max(Q(1) - e, Q(-1)), hi = Q(1);
    auto d = eps_subdiff(f, x, e);
    const auto ys = oracle_samples(f, x, SamplingGrid{});
    auto inside = [&](const Q& g) { return eps_subdiff_oracle(f, x, e, V{g}, ys); };
    const bool confirmed = inside(lo) && inside(hi) && !inside(lo - step) && !inside(hi + step);
    const bool matches = d == P::hull({V{lo}, V{hi}});
    if (!confirmed || !matches) ++bad;
    ss << "eps=" << e << " -> [" << lo << ", " << hi << "] " << (confirmed && matches ? "ok" : "bad") << "; ";
  }
  ss << "oracle step " << kOracleStep;
  return {bad == 0, ss.str()};
}

Outcome lipschitz() {
  Rng rng(41);
  std::vector<std::pair<PWLConvexFunction<Q>, V>> cases;
  for (int i = 0; i < 10; ++i) {
    const std::size_t d = 1 + static_cast<std::size_t>(i % 2);
    auto f = random_pwl<Q>(rng, d, 6);
    V x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.grid_scalar<Q>(-8, 8, 4);
    cases.emplace_back(std::move(f), std::move(x));
  }
  cases.emplace_back(PWLConvexFunction<Q>({{V{Q(1)}, Q(0)}, {V{Q(-1)}, Q(0)}}), V{Q(1)});
  std::size_t violations = 0, over = 0;
  double worst_ratio = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto p = lipschitz_probe(cases[i].first, cases[i].second, Q(1), Q(1) / Q(2), 200, 1000 + i, kLipschitzSlack);
    violations += p.violations;
    if (p.l_emp > p.l_bound) ++over;
    if (p.l_bound > 0) worst_ratio = std::max(worst_ratio, p.l_emp / p.l_bound);
  }
  std::ostringstream ss;
  ss << cases.size() << " functions, violations " << violations << ", L_emp > L_bound in " << over
     << ", max L_emp/L_bound " << worst_ratio;
  return {violations == 0 && over == 0, ss.str()};
}

Outcome graph_convexity() {
  Rng rng(53);
  std::size_t fails = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform_int(0, 1));
    auto f = random_pwl<Q>(rng, d, 6);
    V x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.grid_scalar<Q>(-8, 8, 4);
    const Q e1 = rng.grid_scalar<Q>(0, 12, 4), e2 = rng.grid_scalar<Q>(0, 12, 4), t = rng.grid_scalar<Q>(0, 8, 8);
    if (!graph_convexity_check(f, x, e1, e2, t)) ++fails;
  }
  return {fails == 0, "failures " + std::to_string(fails) + "/500"};
}

Outcome fig1_reproduction(const std::filesystem::path& dir) {
  auto doc = load(dir, "fig1");
  auto s = load_scenario(doc);
  auto a = execute(s), b = execute(s);
  const auto x = parse_polytope<Q>(doc["inputs"]["A"], "");
  const auto y = parse_polytope<Q>(doc["inputs"]["B"], "");
  const auto c = make(x, y);
  std::vector<P> elems;
  std::size_t segments = 0, feasible_count = 0;
  for (const auto& e : a.report["results"]["elements"]) {
    auto z = parse_polytope<Q>(e["element"], "");
    if (z.size() == 2) ++segments;
    if (feasible(z, c)) ++feasible_count;
    elems.push_back(z);
  }
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    bool fresh = true;
    for (std::size_t j = 0; j < i; ++j)
      if (elems[i] == elems[j]) fresh = false;
    if (fresh) ++distinct;
  }
  const bool all_through_vertex = std::all_of(elems.begin(), elems.end(), [](const P& z) {
    return contains_point(z, V{Q(0), Q(0)});
  });
  const bool svg_stable = a.svg && b.svg && *a.svg == *b.svg;
  std::ostringstream ss;
  ss << elems.size() << " elements, " << distinct << " pairwise non-equivalent, " << segments << " segments, "
     << feasible_count << " feasible, common endpoint " << (all_through_vertex ? "yes" : "no") << ", svg "
     << (svg_stable ? "deterministic" : "unstable");
  return {distinct >= 5 && segments == elems.size() && feasible_count == elems.size() && all_through_vertex &&
              svg_stable,
          ss.str()};
}

Outcome determinism(const std::filesystem::path& dir) {
  std::size_t same = 0, total = 0;
  std::string differing;
  for (const auto& [name, text] : kBundledScenarios) {
    auto s = load_scenario(load(dir, std::string(name)));
    auto a = execute(s), b = execute(s);
    ++total;
    const bool svg_same = (!a.svg && !b.svg) || (a.svg && b.svg && *a.svg == *b.svg);
    if (canonical_report(a.report) == canonical_report(b.report) && svg_same) ++same;
    else differing += " " + std::string(name);
  }
  return {same == total, std::to_string(same) + "/" + std::to_string(total) + " scenarios byte-identical" +
                             (differing.empty() ? "" : ", differing:" + differing)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "scenarios";
  std::cout << "tolerances: tau " << kTau << ", gap threshold " << kGapThreshold << ", oracle step " << kOracleStep
            << ", lipschitz slack " << kLipschitzSlack << std::endl;
  criterion("convergence of the selector gap", selector_gap_convergence);
  criterion("lemma suite", lemma_properties);
  criterion("containment and norm bracket", containment);
  criterion("norm identities", norm_identities);
  criterion("MP-difference properties", mp_properties);
  criterion("eps-subdifferential closed form", eps_closed_form);
  criterion("empirical Lipschitz bound", lipschitz);
  criterion("graph convexity", graph_convexity);
  criterion("fig1 scenario reproduction", [&] { return fig1_reproduction(dir); });
  criterion("determinism of demo scenarios", [&] { return determinism(dir); });
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
