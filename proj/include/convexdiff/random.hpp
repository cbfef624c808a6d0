#pragma once

// Reproducible random instances. Draws come straight from std::mt19937_64
// (whose output sequence is fixed by the standard) rather than from the
// implementation-defined std distributions.

#include <cstdint>
#include <random>
#include <vector>

#include "convexdiff/polytope.hpp"

namespace convexdiff {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform integer in [lo, hi].
  long long uniform_int(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = gen_();
    while (r >= limit);
    return lo + static_cast<long long>(r % span);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  template <class T>
  T grid_scalar(long long lo, long long hi, long long den) {
    return T(uniform_int(lo, hi)) / T(den);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

struct PolygonSpec {
  std::size_t max_vertices = 8;
  long long half_range = 2;   // coordinates in [-half_range, half_range]
  long long denominator = 16;  // on the grid 1/denominator
};

// Hull of up to spec.max_vertices grid points, retried until it has at least `min_vertices`.
template <class T>
Polytope<T> random_polygon(Rng& rng, const PolygonSpec& spec = {}, std::size_t min_vertices = 3) {
  const long long lim = spec.half_range * spec.denominator;
  for (;;) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(static_cast<long long>(min_vertices),
                                                            static_cast<long long>(spec.max_vertices)));
    std::vector<Vec<T>> pts;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back(Vec<T>{rng.grid_scalar<T>(-lim, lim, spec.denominator), rng.grid_scalar<T>(-lim, lim, spec.denominator)});
    auto p = Polytope<T>::hull(std::move(pts));
    if (p.size() >= min_vertices) return p;
  }
}

// A random polygon, segment or point, so degenerate shapes show up in sweeps.
template <class T>
Polytope<T> random_shape(Rng& rng, const PolygonSpec& spec = {}) {
  const long long kind = rng.uniform_int(0, 9);
  if (kind == 0) return random_polygon<T>(rng, {1, spec.half_range, spec.denominator}, 1);
  if (kind == 1) return random_polygon<T>(rng, {2, spec.half_range, spec.denominator}, 2);
  return random_polygon<T>(rng, spec);
}

// A random point of X as a convex combination of its vertices with grid weights.
template <class T>
Vec<T> random_point_in(Rng& rng, const Polytope<T>& x, long long weight_den = 8) {
  std::vector<T> w;
  T total(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    w.push_back(T(rng.uniform_int(0, weight_den)));
    total += w.back();
  }
  if (sgn(total) == 0) return x.vertices()[0];
  Vec<T> out(x.dim());
  for (std::size_t i = 0; i < x.size(); ++i) out += x.vertices()[i] * (w[i] / total);
  return out;
}

// Random Y inside X: hull of a few random points of X.
template <class T>
Polytope<T> random_subset(Rng& rng, const Polytope<T>& x, std::size_t points = 4) {
  std::vector<Vec<T>> pts;
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long long>(points)));
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point_in(rng, x));
  return Polytope<T>::hull(std::move(pts));
}

}  // namespace convexdiff
