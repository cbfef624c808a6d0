#pragma once

// Extraction of one minimal element of X ÷ Y.
//
// Z meets X in Y + Z exactly when Z meets every region v - Y, v a vertex of X.
// Starting from Z0 = X + (-Y), each direction p of the sweep lowers (Z)_p to
// the smallest level that still leaves every region hit:
//   s*(p) = max_v min { p.w : w in Z and w in v - Y }.
// Lowering Z in one direction never lets a previously processed direction
// drop further, so one sweep reaches a fixed point and the next only confirms
// it. The selector goes first, which puts (Z)_selector at (X)_p - (Y)_p.
// In the plane a compaction step then replaces Z by the hull of one point per
// cluster of mutually intersecting regions, which turns the polygonal output
// into a low-complexity set such as a segment.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "convexdiff/collection.hpp"
#include "convexdiff/lp.hpp"
#include "convexdiff/nd.hpp"

namespace convexdiff {

template <class T>
struct MinimalElementReport {
  Polytope<T> element;
  Vec<T> selector;
  std::size_t grid_size = 0;
  T tolerance{0};
  bool certified_feasible = false;
  std::size_t sweeps = 0;
  std::size_t directions = 0;  // total directions in one sweep
  bool compacted = false;
  T selector_gap{0};  // (Z)_s - ((X)_s - (Y)_s) at the selector as given
  double selector_gap_unit = 0;  // the same gap for the normalized selector
};

template <class T>
struct ExtractOptions {
  std::size_t grid = 64;
  T tolerance{0};
  std::size_t max_sweeps = 8;
  bool compact = true;
};

// Integer direction close to angle theta (|p| about 4096); unit vectors in double mode.
template <class T>
Vec<T> grid_direction(double theta) {
  if constexpr (Num<T>::exact)
    return Vec<T>{T(static_cast<long long>(std::llround(4096 * std::cos(theta)))),
                  T(static_cast<long long>(std::llround(4096 * std::sin(theta))))};
  else
    return Vec<T>{std::cos(theta), std::sin(theta)};
}

// 0, m/2, m/4, 3m/4, ...: each prefix is spread around the circle.
inline std::vector<std::size_t> interleaved_order(std::size_t m) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < m) ++bits;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < (std::size_t{1} << bits); ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i >> b & 1) r |= std::size_t{1} << (bits - 1 - b);
    if (r < m) out.push_back(r);
  }
  return out;
}

template <class T>
double angle_of(const Vec<T>& p) {
  return std::atan2(to_double(p[1]), to_double(p[0]));
}

namespace detail {

template <class T>
std::vector<planar::P2<T>> sweep_directions_2d(const Collection<T>& c, const Vec<T>& selector, std::size_t m) {
  std::vector<planar::P2<T>> dirs{planar::to_p2(selector)};
  const double base = angle_of(selector);
  for (std::size_t k : interleaved_order(m))
    if (k != 0) dirs.push_back(planar::to_p2(grid_direction<T>(base + 2 * std::numbers::pi * double(k) / double(m))));
  for (const auto& n : planar::edge_normals(c.minuend().planar())) dirs.push_back(n);
  for (const auto& n : planar::edge_normals(negate(c.subtrahend()).planar())) dirs.push_back(n);
  return dirs;
}

template <class T>
T min_over(const planar::Poly<T>& w, const planar::P2<T>& p) {
  return -planar::support(w, planar::P2<T>{-p.x, -p.y});
}

template <class T>
bool feasible_2d(const planar::Poly<T>& z, const std::vector<planar::Poly<T>>& regions) {
  if (z.empty()) return false;
  return std::all_of(regions.begin(), regions.end(),
                     [&](const planar::Poly<T>& r) { return !planar::intersect(z, r).empty(); });
}

template <class T>
planar::P2<T> vertex_mean(const planar::Poly<T>& poly) {
  planar::P2<T> s{T(0), T(0)};
  for (const auto& v : poly) s = s + v;
  return T(1) / T(static_cast<long long>(poly.size())) * s;
}

// Hull of one representative per cluster of regions meeting inside z, then
// greedy vertex removal. Returns z itself if nothing better is found.
template <class T>
planar::Poly<T> compact_2d(const planar::Poly<T>& z, const std::vector<planar::Poly<T>>& regions) {
  struct Cluster {
    planar::Poly<T> common;
    planar::P2<T> target_sum;
    long long count;
  };
  std::vector<Cluster> clusters;
  for (const auto& r : regions) {
    auto w = planar::intersect(z, r);
    if (w.empty()) return z;
    bool joined = false;
    for (auto& cl : clusters) {
      auto both = planar::intersect(cl.common, r);
      if (!both.empty()) {
        cl.common = std::move(both);
        cl.target_sum = cl.target_sum + vertex_mean(r);
        ++cl.count;
        joined = true;
        break;
      }
    }
    if (!joined) clusters.push_back({std::move(w), vertex_mean(r), 1});
  }
  planar::Poly<T> reps;
  for (const auto& cl : clusters)
    reps.push_back(planar::closest_point(cl.common, T(1) / T(cl.count) * cl.target_sum));
  auto out = planar::hull(std::move(reps));
  if (!feasible_2d(out, regions)) return z;
  for (std::size_t i = 0; i < out.size() && out.size() > 1;) {
    planar::Poly<T> rest;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i) rest.push_back(out[j]);
    rest = planar::hull(std::move(rest));
    if (feasible_2d(rest, regions))
      out = std::move(rest), i = 0;
    else
      ++i;
  }
  return out;
}

template <class T>
MinimalElementReport<T> extract_2d(const Collection<T>& c, const Vec<T>& selector, const ExtractOptions<T>& opt) {
  const auto px = c.minuend().planar();
  const auto py = c.subtrahend().planar();
  const auto neg_y = negate(c.subtrahend()).planar();
  planar::Poly<T> z = planar::minkowski(px, neg_y);
  std::vector<planar::Poly<T>> regions, hit;
  for (const auto& v : px) regions.push_back(planar::translate(neg_y, v));
  hit = regions;  // each v - Y lies inside Z0

  const auto dirs = sweep_directions_2d(c, selector, opt.grid);
  MinimalElementReport<T> rep{Polytope<T>::origin(2), selector, opt.grid, opt.tolerance};
  rep.directions = dirs.size();

  auto process = [&](const planar::P2<T>& p) {
    const T hz = planar::support(z, p);
    const T floor = planar::support(px, p) - planar::support(py, p);
    if (!(hz - floor > opt.tolerance)) return false;
    T level = floor;
    for (const auto& w : hit) {
      T lo = min_over(w, p);
      if (lo > level) level = lo;
      if (!(hz - level > opt.tolerance)) return false;
    }
    const planar::HalfPlane<T> h{p, level};
    z = planar::clip(z, h);
    for (auto& w : hit) w = planar::clip(w, h);
    return true;
  };

  bool changed = true;
  while (changed) {
    if (rep.sweeps == opt.max_sweeps)
      throw BudgetExceeded("minimal element extraction did not settle within " + std::to_string(opt.max_sweeps) +
                           " sweeps");
    ++rep.sweeps;
    changed = false;
    for (const auto& p : dirs) changed = process(p) || changed;
  }
  if (opt.compact) {
    auto small = compact_2d(z, regions);
    rep.compacted = small.size() < z.size() || !(small == z);
    z = std::move(small);
  }
  rep.element = Polytope<T>::from_planar(z);
  return rep;
}

template <class T>
std::vector<Vec<T>> sweep_directions_nd(const Collection<T>& c, const Vec<T>& selector, std::size_t m) {
  const std::size_t d = c.dim();
  std::vector<Vec<T>> dirs{selector};
  std::vector<Vec<T>> cube;
  std::vector<int> digits(d, -1);
  for (;;) {
    Vec<T> v(d);
    bool nonzero = false;
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = T(digits[i]);
      nonzero = nonzero || digits[i] != 0;
    }
    if (nonzero) cube.push_back(v);
    std::size_t i = 0;
    while (i < d && digits[i] == 1) digits[i++] = -1;
    if (i == d) break;
    ++digits[i];
  }
  // Axes first, then the rest by support size.
  std::stable_sort(cube.begin(), cube.end(), [](const Vec<T>& a, const Vec<T>& b) {
    auto nz = [](const Vec<T>& v) { return std::count_if(v.begin(), v.end(), [](const T& t) { return sgn(t) != 0; }); };
    return nz(a) < nz(b);
  });
  for (std::size_t i = 0; i < cube.size() && i < m; ++i) dirs.push_back(cube[i]);
  for (const auto& poly : {c.minuend(), negate(c.subtrahend())})
    if (poly.size() > 1)
      for (const auto& f : nd::facets(poly.vertices())) dirs.push_back(f.normal);
  return dirs;
}

// min p.w over w in (v - Y) subject to the constraints of Z, by linear programming.
template <class T>
std::optional<T> min_over_region(const std::vector<nd::Constraint<T>>& z, const Vec<T>& v,
                                 const std::vector<Vec<T>>& y, const Vec<T>& p) {
  const std::size_t ny = y.size(), nc = z.size();
  std::vector<std::vector<T>> rows;
  std::vector<T> rhs;
  std::vector<T> row(ny + nc, T(0));
  for (std::size_t i = 0; i < ny; ++i) row[i] = T(1);
  rows.push_back(row);
  rhs.push_back(T(1));
  for (std::size_t k = 0; k < nc; ++k) {
    std::vector<T> r(ny + nc, T(0));
    for (std::size_t i = 0; i < ny; ++i) r[i] = -dot(z[k].normal, y[i]);
    r[ny + k] = T(1);
    rows.push_back(std::move(r));
    rhs.push_back(z[k].level - dot(z[k].normal, v));
  }
  std::vector<T> cost(ny + nc, T(0));
  for (std::size_t i = 0; i < ny; ++i) cost[i] = -dot(p, y[i]);
  auto res = lp::minimize(std::move(rows), std::move(rhs), std::move(cost));
  if (res.status != lp::Status::optimal) return std::nullopt;
  return dot(p, v) + res.value;
}

template <class T>
MinimalElementReport<T> extract_nd(const Collection<T>& c, const Vec<T>& selector, const ExtractOptions<T>& opt) {
  const std::size_t d = c.dim();
  if (d > kMaxIntersectDim) throw UnsupportedDimension(d, "minimal element extraction");
  const auto z0 = trivial_element(c);
  std::vector<nd::Constraint<T>> cs = nd::facets(z0.vertices());
  const auto& yv = c.subtrahend().vertices();
  const auto dirs = sweep_directions_nd(c, selector, opt.grid);
  MinimalElementReport<T> rep{Polytope<T>::origin(d), selector, opt.grid, opt.tolerance};
  rep.directions = dirs.size();

  auto zsupport = [&](const Vec<T>& p) {
    std::vector<std::vector<T>> rows;
    std::vector<T> rhs, cost;
    // max p.z over cs: write z = u - w with u, w >= 0 and slacks.
    const std::size_t nc = cs.size();
    for (std::size_t k = 0; k < nc; ++k) {
      std::vector<T> r(2 * d + nc, T(0));
      for (std::size_t i = 0; i < d; ++i) {
        r[i] = cs[k].normal[i];
        r[d + i] = -cs[k].normal[i];
      }
      r[2 * d + k] = T(1);
      rows.push_back(std::move(r));
      rhs.push_back(cs[k].level);
    }
    cost.assign(2 * d + nc, T(0));
    for (std::size_t i = 0; i < d; ++i) {
      cost[i] = -p[i];
      cost[d + i] = p[i];
    }
    return T(-lp::minimize(std::move(rows), std::move(rhs), std::move(cost)).value);
  };

  auto process = [&](const Vec<T>& p) {
    const T hz = zsupport(p);
    const T floor = support(c, p);
    if (!(hz - floor > opt.tolerance)) return false;
    T level = floor;
    for (const auto& v : c.minuend().vertices()) {
      auto lo = min_over_region(cs, v, yv, p);
      if (!lo) throw Error("extraction lost feasibility");
      if (*lo > level) level = *lo;
      if (!(hz - level > opt.tolerance)) return false;
    }
    cs.push_back({p, level});
    return true;
  };

  bool changed = true;
  while (changed) {
    if (rep.sweeps == opt.max_sweeps)
      throw BudgetExceeded("minimal element extraction did not settle within " + std::to_string(opt.max_sweeps) +
                           " sweeps");
    ++rep.sweeps;
    changed = false;
    for (const auto& p : dirs) changed = process(p) || changed;
  }
  auto z = from_constraints(cs, d);
  if (!z) throw Error("extraction produced an empty set");
  rep.element = *z;
  return rep;
}

}  // namespace detail

// One (m, tau)-minimal element of X ÷ Y: feasible, and no grid direction's
// support level can be lowered by more than tau without losing feasibility.
template <class T>
MinimalElementReport<T> minimal_element(const Collection<T>& c, const Vec<T>& selector, const ExtractOptions<T>& opt) {
  require_same_dim(c.dim(), selector.dim());
  if (selector.is_zero()) throw InvalidArgument("selector must be nonzero");
  if (opt.grid < 8) throw InvalidArgument("grid needs at least 8 directions");
  if (opt.tolerance < T(0)) throw InvalidArgument("tolerance must be nonnegative");
  auto rep = c.dim() == 2 ? detail::extract_2d(c, selector, opt) : detail::extract_nd(c, selector, opt);
  rep.certified_feasible = feasible(rep.element, c);
  rep.selector_gap = support_value(rep.element, selector) - support(c, selector);
  rep.selector_gap_unit = to_double(rep.selector_gap) / norm(selector);
  return rep;
}

template <class T>
MinimalElementReport<T> minimal_element(const Collection<T>& c, const Vec<T>& selector, std::size_t m, const T& tau) {
  ExtractOptions<T> opt;
  opt.grid = m;
  opt.tolerance = tau;
  return minimal_element(c, selector, opt);
}

template <class T>
struct NormBracket {
  T lower_sq{0}, upper_sq{0};
  double lower = 0, upper = 0;
  std::size_t selectors = 0;
};

// Selectors for the norm bracket: k uniform directions plus -w for every vertex w of X + (-Y).
template <class T>
std::vector<Vec<T>> norm_selectors(const Collection<T>& c, std::size_t k) {
  if (c.dim() != 2) throw UnsupportedDimension(c.dim(), "norm selectors");
  std::vector<Vec<T>> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(grid_direction<T>(2 * std::numbers::pi * double(i) / double(k)));
  const auto z0 = trivial_element(c);
  for (const auto& w : z0.vertices())
    if (!w.is_zero()) out.push_back(-w);
  return out;
}

// lower = max norm of extracted minimal elements, upper = norm of X + (-Y).
template <class T>
NormBracket<T> collection_norm(const Collection<T>& c, std::size_t k, const ExtractOptions<T>& opt = {}) {
  NormBracket<T> b;
  b.upper_sq = norm_sq(trivial_element(c));
  for (const auto& s : norm_selectors(c, k)) {
    auto rep = minimal_element(c, s, opt);
    T n = norm_sq(rep.element);
    if (n > b.lower_sq) b.lower_sq = n;
    ++b.selectors;
  }
  b.lower = std::sqrt(to_double(b.lower_sq));
  b.upper = std::sqrt(to_double(b.upper_sq));
  return b;
}

// Exact test of sqrt(n) <= sqrt(a) + sqrt(b).
template <class T>
bool sqrt_sum_bound(const T& n, const T& a, const T& b) {
  T lhs = n - a - b;
  if (!(lhs > T(0))) return true;
  return !(lhs * lhs > T(4) * a * b);
}

}  // namespace convexdiff
