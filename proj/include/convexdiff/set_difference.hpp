#pragma once

// Single-set differences. cover_diff is {z : X in Y + z}, the translates of Y
// covering X; erode_diff is the classical {z : z + Y in X}. Both return
// std::nullopt for the empty set.

#include <optional>
#include <string>
#include <vector>

#include "convexdiff/polytope.hpp"

namespace convexdiff {

namespace detail {
template <class T>
std::optional<Polytope<T>> intersect_all(const std::vector<Polytope<T>>& sets) {
  std::optional<Polytope<T>> acc = sets.front();
  for (std::size_t i = 1; i < sets.size() && acc; ++i) acc = intersect(*acc, sets[i]);
  return acc;
}
}  // namespace detail

// Intersection over vertices v of X of v - Y.
template <class T>
std::optional<Polytope<T>> cover_diff(const Polytope<T>& x, const Polytope<T>& y) {
  require_same_dim(x.dim(), y.dim());
  const auto neg_y = negate(y);
  std::vector<Polytope<T>> parts;
  for (const auto& v : x.vertices()) parts.push_back(translate(neg_y, v));
  return detail::intersect_all(parts);
}

// Intersection over vertices y of Y of X - y.
template <class T>
std::optional<Polytope<T>> erode_diff(const Polytope<T>& x, const Polytope<T>& y) {
  require_same_dim(x.dim(), y.dim());
  std::vector<Polytope<T>> parts;
  for (const auto& v : y.vertices()) parts.push_back(translate(x, Vec<T>(-v)));
  return detail::intersect_all(parts);
}

// The alternative intersection form: the intersection over v in X of Y - v.
template <class T>
std::optional<Polytope<T>> cover_diff_reflected(const Polytope<T>& x, const Polytope<T>& y) {
  require_same_dim(x.dim(), y.dim());
  std::vector<Polytope<T>> parts;
  for (const auto& v : x.vertices()) parts.push_back(translate(y, Vec<T>(-v)));
  return detail::intersect_all(parts);
}

// Definitional membership test: X in Y + z.
template <class T>
bool covers(const Polytope<T>& x, const Polytope<T>& y, const Vec<T>& z) {
  return contains_set(x, translate(y, z));
}

template <class T>
struct SignDiscrepancy {
  Polytope<T> x, y;
  std::optional<Polytope<T>> definitional, reflected;
  std::size_t probes = 0;
  std::size_t definitional_mismatches = 0;  // probes where membership in cover_diff disagrees with the definition
  std::size_t reflected_mismatches = 0;     // same for the reflected form
  std::optional<Vec<T>> witness;            // a probe where the reflected form disagrees
};

// Compares both intersection forms against the definition on the probe points.
template <class T>
SignDiscrepancy<T> compare_intersection_forms(const Polytope<T>& x, const Polytope<T>& y,
                                              const std::vector<Vec<T>>& probes) {
  SignDiscrepancy<T> r{x, y, cover_diff(x, y), cover_diff_reflected(x, y), 0, 0, 0, std::nullopt};
  auto member = [](const std::optional<Polytope<T>>& s, const Vec<T>& z) { return s && contains_point(*s, z); };
  for (const auto& z : probes) {
    ++r.probes;
    bool truth = covers(x, y, z);
    if (member(r.definitional, z) != truth) ++r.definitional_mismatches;
    if (member(r.reflected, z) != truth) {
      ++r.reflected_mismatches;
      if (!r.witness) r.witness = z;
    }
  }
  return r;
}

// Probe points: the vertices of both forms plus a regular grid over the box [-r, r]^2.
template <class T>
std::vector<Vec<T>> probe_grid(const Polytope<T>& x, const Polytope<T>& y, long long r, long long steps) {
  std::vector<Vec<T>> out;
  for (const auto& s : {cover_diff(x, y), cover_diff_reflected(x, y)})
    if (s)
      for (const auto& v : s->vertices()) out.push_back(v);
  for (long long i = -steps; i <= steps; ++i)
    for (long long j = -steps; j <= steps; ++j)
      out.push_back(Vec<T>{T(i * r) / T(steps), T(j * r) / T(steps)});
  return out;
}

}  // namespace convexdiff
