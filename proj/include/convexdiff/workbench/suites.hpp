#pragma once

// Randomized property suites over the collection and difference operations.
// Instance i draws from its own seeded stream, so results do not depend on
// the number of worker threads.

#include <string>
#include <vector>

#include "convexdiff/minimal_element.hpp"
#include "convexdiff/minimal_oracle.hpp"
#include "convexdiff/random.hpp"
#include "convexdiff/set_difference.hpp"
#include "convexdiff/workbench/json_io.hpp"
#include "convexdiff/workbench/parallel.hpp"

namespace convexdiff::workbench {

struct PropertyTally {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  Json first_failure = nullptr;

  bool pass() const { return failures == 0; }
};

struct SuiteReport {
  std::vector<PropertyTally> properties;
  Json details = Json::object();

  bool pass() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyTally& p) { return p.pass(); });
  }
};

inline Json to_json(const PropertyTally& t) {
  return Json{{"property", t.name},
              {"instances", t.instances},
              {"failures", t.failures},
              {"pass", t.pass()},
              {"first_failure", t.first_failure}};
}

inline Json to_json(const SuiteReport& r) {
  Json props = Json::array();
  for (const auto& p : r.properties) props.push_back(to_json(p));
  return Json{{"pass", r.pass()}, {"properties", std::move(props)}, {"details", r.details}};
}

struct SuiteOptions {
  std::size_t instances = 100;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t grid = 16;           // extraction grid
  std::size_t selectors = 4;       // extractions per instance
  std::size_t oracle_grid = 8;     // uniform oracle directions
  std::size_t oracle_ladder = 6;   // oracle rungs per direction
  std::size_t oracle_orders = 4;   // extra random descent orders
};

namespace detail {

struct Check {
  std::size_t property;
  bool ok;
  Json info;
};

template <class F>
SuiteReport tally(std::vector<std::string> names, const SuiteOptions& opt, F&& instance) {
  std::vector<std::vector<Check>> slots(opt.instances);
  parallel_for(opt.instances, opt.jobs, [&](std::size_t i) {
    Rng rng(instance_seed(opt.seed, i));
    slots[i] = instance(rng, i);
  });
  SuiteReport r;
  for (auto& n : names) r.properties.push_back({std::move(n)});
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (auto& c : slots[i]) {
      auto& t = r.properties[c.property];
      ++t.instances;
      if (!c.ok && t.failures++ == 0) {
        c.info["instance"] = i;
        t.first_failure = std::move(c.info);
      }
    }
  return r;
}

template <class T>
T default_tolerance() {
  return Num<T>::exact ? T(0) : T(Num<double>::tau);
}

template <class T>
ExtractOptions<T> extract_options(std::size_t grid) {
  ExtractOptions<T> o;
  o.grid = grid;
  o.tolerance = default_tolerance<T>();
  return o;
}

template <class T>
std::vector<Vec<T>> random_selectors(Rng& rng, std::size_t k) {
  std::vector<Vec<T>> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(grid_direction<T>(rng.uniform01() * 2 * std::numbers::pi));
  return out;
}

template <class T>
bool close(const Polytope<T>& a, const Polytope<T>& b) {
  if constexpr (Num<T>::exact)
    return a == b;
  else
    return hausdorff(a, b) <= Num<double>::tau;
}

template <class T>
OracleOptions oracle_options(const SuiteOptions& opt, std::uint64_t seed) {
  OracleOptions o;
  o.orders = opt.oracle_orders;
  o.seed = seed;
  return o;
}

}  // namespace detail

// Cancellation, scaled subtrahend, zero criterion and origin membership on `instances` random instances each.
template <class T>
SuiteReport lemma_suite(const SuiteOptions& opt) {
  using P = Polytope<T>;
  const T gammas[] = {T(0), T(1) / T(4), T(1) / T(2), T(3) / T(4), T(1)};
  auto report = detail::tally(
      {"cancellation_equivalence", "cancellation_shared_elements", "scaled_subtrahend_extraction", "scaled_subtrahend_oracle_single", "zero_iff_equal",
       "origin_in_extracted_elements", "origin_in_oracle_candidates"},
      opt, [&](Rng& rng, std::size_t i) {
        std::vector<detail::Check> out;
        const auto eo = detail::extract_options<T>(opt.grid);

        // Cancellation: X ÷ Y and (X + Z) ÷ (Y + Z) agree, as pairs and on their elements.
        {
          auto x = random_shape<T>(rng), y = random_shape<T>(rng), z = random_shape<T>(rng);
          auto c1 = make(x, y), c2 = make(minkowski_sum(x, z), minkowski_sum(y, z));
          out.push_back({0, is_equivalent(c1, c2), {{"X", to_json(x)}, {"Y", to_json(y)}, {"Z", to_json(z)}}});
          bool shared = true;
          for (const auto& s : detail::random_selectors<T>(rng, 2)) {
            auto z1 = minimal_element(c1, s, eo).element, z2 = minimal_element(c2, s, eo).element;
            shared = shared && feasible(z1, c2) && feasible(z2, c1);
          }
          out.push_back({1, shared, {{"X", to_json(x)}, {"Y", to_json(y)}, {"Z", to_json(z)}}});
        }

        // Scaled subtrahend: X ÷ gX = (1 - g) X for every g in the list.
        {
          auto x = random_shape<T>(rng);
          bool extracted = true, single = true;
          Json info{{"X", to_json(x)}};
          for (const auto& g : gammas) {
            auto c = make(x, scale(x, g));
            const P target = scale(x, T(1 - g));
            auto sel = detail::random_selectors<T>(rng, 1)[0];
            auto rep = minimal_element(c, sel, eo);
            if (!rep.certified_feasible || !detail::close(rep.element, target)) {
              extracted = false;
              info["gamma"] = to_json(g);
            }
            auto o = minimal_oracle(c, opt.oracle_grid, opt.oracle_ladder, detail::oracle_options<T>(opt, i + 1));
            if (o.candidates.size() != 1 || !detail::close(o.candidates[0], target)) {
              single = false;
              info["gamma"] = to_json(g);
              info["oracle_candidates"] = o.candidates.size();
            }
          }
          out.push_back({2, extracted, info});
          out.push_back({3, single, info});
        }

        // Zero criterion: X ÷ Y is zero iff X = Y; for X != Y some element differs from {0}.
        {
          auto x = random_shape<T>(rng);
          P y = x;
          switch (i % 4) {
            case 0: break;
            case 1: y = random_shape<T>(rng); break;
            case 2: {  // one vertex pushed out by 1/1024
              auto vs = x.vertices();
              vs.push_back(vs[0] + Vec<T>{T(1) / T(1024), T(1) / T(1024)});
              y = P::hull(std::move(vs));
              break;
            }
            default: y = scale(x, T(1023) / T(1024)); break;
          }
          auto c = make(x, y);
          bool equal = detail::close(x, y);
          bool ok = is_zero(c) == equal;
          if (equal) {
            auto rep = minimal_element(c, detail::random_selectors<T>(rng, 1)[0], eo);
            ok = ok && rep.element == P::origin(2);
          } else if (!contains_set(x, y)) {
            ok = ok && !feasible(P::origin(2), c);
          } else {
            // Some vertex u of Y lies outside X; p = u - proj_X(u) has (X)_p < (Y)_p.
            for (const auto& u : y.vertices()) {
              if (contains_point(x, u)) continue;
              auto proj = planar::closest_point(x.planar(), planar::to_p2(u));
              Vec<T> p = u - planar::to_vec(proj);
              auto rep = minimal_element(c, p, eo);
              ok = ok && sgn(support(c, p)) < 0 && sgn(support_value(rep.element, p)) < 0 && !(rep.element == P::origin(2));
              break;
            }
          }
          out.push_back({4, ok, {{"X", to_json(x)}, {"Y", to_json(y)}}});
        }

        // Origin membership: Y in X puts the origin in every minimal element.
        {
          auto x = random_polygon<T>(rng);
          auto y = random_subset(rng, x);
          auto c = make(x, y);
          bool extracted = true;
          for (const auto& s : detail::random_selectors<T>(rng, opt.selectors))
            extracted = extracted && contains_point(minimal_element(c, s, eo).element, Vec<T>(2));
          bool oracle = true;
          for (const auto& z : minimal_oracle(c, opt.oracle_grid, opt.oracle_ladder, detail::oracle_options<T>(opt, i + 1)).candidates)
            oracle = oracle && contains_point(z, Vec<T>(2));
          Json info{{"X", to_json(x)}, {"Y", to_json(y)}};
          out.push_back({5, extracted, info});
          out.push_back({6, oracle, info});
        }
        return out;
      });
  report.details = Json{{"gammas", Json::array({"0", "1/4", "1/2", "3/4", "1"})},
                        {"grid", opt.grid},
                        {"oracle_grid", opt.oracle_grid},
                        {"oracle_ladder", opt.oracle_ladder}};
  return report;
}

// Every oracle candidate lies in X + (-Y), and the norm bracket satisfies
// lower <= upper <= ||X|| + ||Y||.
template <class T>
SuiteReport containment_suite(const SuiteOptions& opt) {
  return detail::tally({"oracle_candidates_in_trivial_element", "oracle_candidates_feasible", "norm_bracket_ordered",
                        "norm_upper_triangle_bound"},
                       opt, [&](Rng& rng, std::size_t i) {
                         auto x = random_shape<T>(rng), y = random_shape<T>(rng);
                         auto c = make(x, y);
                         const auto z0 = trivial_element(c);
                         auto o = minimal_oracle(c, opt.oracle_grid, opt.oracle_ladder,
                                                 detail::oracle_options<T>(opt, i + 1));
                         bool inside = true, feas = true;
                         for (const auto& z : o.candidates) {
                           inside = inside && contains_set(z, z0);
                           feas = feas && feasible(z, c);
                         }
                         auto b = collection_norm(c, opt.selectors, detail::extract_options<T>(opt.grid));
                         Json info{{"X", to_json(x)}, {"Y", to_json(y)}, {"candidates", o.candidates.size()}};
                         Json norms{{"X", to_json(x)},
                                    {"Y", to_json(y)},
                                    {"lower", b.lower},
                                    {"upper", b.upper}};
                         return std::vector<detail::Check>{
                             {0, inside, info},
                             {1, feas, info},
                             {2, cmp(b.lower_sq, b.upper_sq) <= 0, norms},
                             {3, sqrt_sum_bound(b.upper_sq, norm_sq(x), norm_sq(y)), norms}};
                       });
}

// Covering and erosion properties, and the two intersection forms against the definition.
template <class T>
SuiteReport mp_suite(const SuiteOptions& opt) {
  using P = Polytope<T>;
  std::vector<std::optional<SignDiscrepancy<T>>> witnesses(opt.instances);
  std::vector<Json> covering_counterexamples(opt.instances);
  auto report = detail::tally(
      {"covering_property", "covering_pointwise", "erosion_property", "erosion_inside_when_origin_in_Y",
       "translation_equivariance", "definitional_form_matches_membership"},
      opt, [&](Rng& rng, std::size_t i) {
        std::vector<detail::Check> out;
        auto y = random_shape<T>(rng);
        // Even instances fit X inside a translate of Y so the cover is nonempty.
        P x = i % 2 == 0 ? random_subset(rng, translate(y, Vec<T>{rng.grid_scalar<T>(-16, 16, 8), rng.grid_scalar<T>(-16, 16, 8)}))
                         : random_shape<T>(rng);
        Json info{{"X", to_json(x)}, {"Y", to_json(y)}};
        if (auto cd = cover_diff(x, y)) {
          out.push_back({0, contains_set(x, minkowski_sum(*cd, y)), info});
          bool pointwise = true;
          std::vector<Vec<T>> zs = cd->vertices();
          for (int k = 0; k < 3; ++k) zs.push_back(random_point_in(rng, *cd));
          for (const auto& z : zs) pointwise = pointwise && covers(x, y, z);
          out.push_back({1, pointwise, info});
          if (contains_point(y, Vec<T>(2)) && !contains_set(*cd, x) && covering_counterexamples[i].is_null())
            covering_counterexamples[i] = Json{{"X", to_json(x)}, {"Y", to_json(y)}, {"cover_diff", to_json(*cd)}};
        }
        if (auto ed = erode_diff(x, y)) {
          out.push_back({2, contains_set(minkowski_sum(*ed, y), x), info});
          if (contains_point(y, Vec<T>(2))) out.push_back({3, contains_set(*ed, x), info});
        }
        Vec<T> v{rng.grid_scalar<T>(-8, 8, 4), rng.grid_scalar<T>(-8, 8, 4)};
        auto a = cover_diff(translate(x, v), y), b = cover_diff(x, y);
        auto e1 = erode_diff(translate(x, v), y), e2 = erode_diff(x, y);
        bool eq = a.has_value() == b.has_value() && (!a || *a == translate(*b, v)) && e1.has_value() == e2.has_value() &&
                  (!e1 || *e1 == translate(*e2, v));
        out.push_back({4, eq, info});
        auto sd = compare_intersection_forms(x, y, probe_grid(x, y, 4, 8));
        out.push_back({5, sd.definitional_mismatches == 0, info});
        if (sd.witness) witnesses[i] = sd;
        return out;
      });
  std::size_t count = 0;
  Json first = nullptr;
  for (std::size_t i = 0; i < opt.instances; ++i)
    if (witnesses[i]) {
      if (count++ == 0) {
        const auto& w = *witnesses[i];
        first = Json{{"instance", i},
                     {"X", to_json(w.x)},
                     {"Y", to_json(w.y)},
                     {"definitional_form", to_json(w.definitional)},
                     {"reflected_form", to_json(w.reflected)},
                     {"probe", to_json(*w.witness)},
                     {"covered_by_definition", covers(w.x, w.y, *w.witness)},
                     {"probes", w.probes},
                     {"reflected_mismatches", w.reflected_mismatches}};
      }
    }
  std::size_t cover_cex = 0;
  Json first_cex = nullptr;
  for (auto& j : covering_counterexamples)
    if (!j.is_null() && cover_cex++ == 0) first_cex = j;
  report.details = Json{{"sign_discrepancy", {{"pairs_with_reflected_mismatch", count}, {"witness", first}}},
                        {"covering_origin_in_Y_not_inside_X", {{"count", cover_cex}, {"first", first_cex}}}};
  return report;
}

// Candidate generalizations of origin membership to nested minuends X in X': observed
// violations only, nothing is asserted.
template <class T>
SuiteReport nested_exploration(const SuiteOptions& opt) {
  auto report = detail::tally(
      {"G1_same_selector_inclusion", "G2_some_larger_element_contains", "G3_support_monotone",
       "G4_larger_elements_feasible_for_smaller"},
      opt, [&](Rng& rng, std::size_t) {
        auto xl = random_polygon<T>(rng);
        auto x = random_subset(rng, xl, 5);
        auto y = random_subset(rng, xl, 3);
        auto c = make(x, y), cl = make(xl, y);
        const auto eo = detail::extract_options<T>(opt.grid);
        std::vector<Polytope<T>> small, large;
        std::vector<Vec<T>> sels;
        for (std::size_t k = 0; k < opt.selectors; ++k)
          sels.push_back(grid_direction<T>(2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(opt.selectors)));
        for (const auto& s : sels) {
          small.push_back(minimal_element(c, s, eo).element);
          large.push_back(minimal_element(cl, s, eo).element);
        }
        Json info{{"X", to_json(x)}, {"X_larger", to_json(xl)}, {"Y", to_json(y)}};
        bool g1 = true, g2 = true, g3 = true;
        for (std::size_t k = 0; k < sels.size(); ++k) {
          if (!contains_set(small[k], large[k]) && g1) {
            g1 = false;
            info["G1_selector"] = to_json(sels[k]);
            info["G1_Z"] = to_json(small[k]);
            info["G1_Z_larger"] = to_json(large[k]);
          }
          bool some = std::any_of(large.begin(), large.end(), [&](const Polytope<T>& z) { return contains_set(small[k], z); });
          g2 = g2 && some;
          g3 = g3 && cmp(support(c, sels[k]), support(cl, sels[k])) <= 0;
        }
        bool g4 = std::all_of(large.begin(), large.end(), [&](const Polytope<T>& z) { return feasible(z, c); });
        return std::vector<detail::Check>{{0, g1, info}, {1, g2, info}, {2, g3, info}, {3, g4, info}};
      });
  report.details = Json{{"statements",
                         {{"G1_same_selector_inclusion", "Z(p) in Z'(p) for the elements extracted with the same selector"},
                          {"G2_some_larger_element_contains", "every extracted Z lies in some extracted Z'"},
                          {"G3_support_monotone", "(X ÷ Y)_p <= (X' ÷ Y)_p at every selector"},
                          {"G4_larger_elements_feasible_for_smaller", "every Z' is feasible for X ÷ Y, so it contains some element of X ÷ Y"}}},
                        {"note", "exploratory; violations are observations, not claims"}};
  return report;
}

}  // namespace convexdiff::workbench
