#pragma once

// Planar kernel. Polygons are vertex cycles in canonical form: counterclockwise,
// starting at the lexicographic minimum, no repeated or collinear vertices.
// Segments are stored as {lexmin, lexmax}; points as a single vertex.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "convexdiff/scalar.hpp"
#include "convexdiff/vector.hpp"

namespace convexdiff::planar {

template <class T>
struct P2 {
  T x{0}, y{0};

  friend P2 operator+(const P2& a, const P2& b) { return {a.x + b.x, a.y + b.y}; }
  friend P2 operator-(const P2& a, const P2& b) { return {a.x - b.x, a.y - b.y}; }
  friend P2 operator-(const P2& a) { return {-a.x, -a.y}; }
  friend P2 operator*(const T& s, const P2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const P2& a, const P2& b) { return cmp(a.x, b.x) == 0 && cmp(a.y, b.y) == 0; }
};

template <class T>
using Poly = std::vector<P2<T>>;

// Halfplane {z : n.z <= s}.
template <class T>
struct HalfPlane {
  P2<T> n;
  T s;
};

template <class T>
T dot(const P2<T>& a, const P2<T>& b) {
  return a.x * b.x + a.y * b.y;
}

template <class T>
T cross(const P2<T>& a, const P2<T>& b) {
  return a.x * b.y - a.y * b.x;
}

template <class T>
int orient(const P2<T>& a, const P2<T>& b, const P2<T>& c) {
  return sgn(cross(b - a, c - a));
}

template <class T>
bool lex_less(const P2<T>& a, const P2<T>& b) {
  int c = cmp(a.x, b.x);
  return c != 0 ? c < 0 : cmp(a.y, b.y) < 0;
}

template <class T>
P2<T> rot90(const P2<T>& a) {
  return {-a.y, a.x};
}

template <class T>
P2<T> to_p2(const Vec<T>& v) {
  return {v[0], v[1]};
}

template <class T>
Vec<T> to_vec(const P2<T>& p) {
  return Vec<T>{p.x, p.y};
}

// Convex hull (Andrew's monotone chain) in canonical form.
template <class T>
Poly<T> hull(Poly<T> pts) {
  std::sort(pts.begin(), pts.end(), [](const P2<T>& a, const P2<T>& b) { return lex_less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  Poly<T> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() == 2 && lex_less(h[1], h[0])) std::swap(h[0], h[1]);
  return h;
}

// Canonicalizes a cycle that is already convex and counterclockwise (possibly
// with repeated or collinear vertices), as produced by clipping.
template <class T>
Poly<T> normalize_ccw(const Poly<T>& in) {
  Poly<T> a;
  a.reserve(in.size());
  for (const auto& p : in)
    if (a.empty() || !(a.back() == p)) a.push_back(p);
  while (a.size() > 1 && a.back() == a.front()) a.pop_back();
  if (a.size() >= 3) {
    bool changed = true;
    while (changed && a.size() >= 3) {
      changed = false;
      for (std::size_t i = 0; i < a.size() && a.size() >= 3; ++i) {
        const auto& prev = a[(i + a.size() - 1) % a.size()];
        const auto& next = a[(i + 1) % a.size()];
        if (orient(prev, a[i], next) <= 0) {
          a.erase(a.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          --i;
        }
      }
    }
  }
  if (a.size() >= 3) {
    auto it = std::min_element(a.begin(), a.end(), [](const P2<T>& x, const P2<T>& y) { return lex_less(x, y); });
    std::rotate(a.begin(), it, a.end());
    return a;
  }
  // Collapsed to a point or segment: the extremes of the original cycle.
  if (in.empty()) return {};
  auto [lo, hi] = std::minmax_element(in.begin(), in.end(),
                                      [](const P2<T>& x, const P2<T>& y) { return lex_less(x, y); });
  if (*lo == *hi) return {*lo};
  return {*lo, *hi};
}

template <class T>
T support(const Poly<T>& poly, const P2<T>& p) {
  T best = dot(poly[0], p);
  for (std::size_t i = 1; i < poly.size(); ++i) {
    T v = dot(poly[i], p);
    if (v > best) best = std::move(v);
  }
  return best;
}

template <class T>
std::size_t argmax(const Poly<T>& poly, const P2<T>& p) {
  std::size_t best = 0;
  T bv = dot(poly[0], p);
  for (std::size_t i = 1; i < poly.size(); ++i) {
    T v = dot(poly[i], p);
    if (v > bv) {
      bv = std::move(v);
      best = i;
    }
  }
  return best;
}

// Clips a convex cycle by {n.z <= s}. Returns an empty polygon if nothing is left.
template <class T>
Poly<T> clip(const Poly<T>& poly, const HalfPlane<T>& h) {
  if (poly.empty()) return {};
  std::vector<T> val(poly.size());
  bool all_in = true, all_out = true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    val[i] = dot(poly[i], h.n) - h.s;
    int sg = sgn(val[i]);
    if (sg > 0) all_in = false;
    if (sg <= 0) all_out = false;
  }
  if (all_in) return poly;
  if (all_out) return {};
  Poly<T> out;
  out.reserve(poly.size() + 1);
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;
    int si = sgn(val[i]), sj = sgn(val[j]);
    if (si <= 0) out.push_back(poly[i]);
    if ((si < 0 && sj > 0) || (si > 0 && sj < 0)) {
      T t = val[i] / (val[i] - val[j]);
      out.push_back(poly[i] + t * (poly[j] - poly[i]));
    }
  }
  return normalize_ccw(out);
}

template <class T>
Poly<T> clip_all(Poly<T> poly, const std::vector<HalfPlane<T>>& hs) {
  for (const auto& h : hs) {
    poly = clip(poly, h);
    if (poly.empty()) break;
  }
  return poly;
}

// Halfplane description of a canonical polygon, segment or point.
template <class T>
std::vector<HalfPlane<T>> hrep(const Poly<T>& poly) {
  std::vector<HalfPlane<T>> hs;
  if (poly.size() == 1) {
    const auto& v = poly[0];
    hs.push_back({{T(1), T(0)}, v.x});
    hs.push_back({{T(-1), T(0)}, -v.x});
    hs.push_back({{T(0), T(1)}, v.y});
    hs.push_back({{T(0), T(-1)}, -v.y});
  } else if (poly.size() == 2) {
    P2<T> d = poly[1] - poly[0];
    P2<T> nrm{d.y, -d.x};
    hs.push_back({nrm, dot(nrm, poly[0])});
    hs.push_back({-nrm, -dot(nrm, poly[0])});
    hs.push_back({d, dot(d, poly[1])});
    hs.push_back({-d, -dot(d, poly[0])});
  } else {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& a = poly[i];
      const auto& b = poly[(i + 1) % poly.size()];
      P2<T> nrm{b.y - a.y, a.x - b.x};
      hs.push_back({nrm, dot(nrm, a)});
    }
  }
  return hs;
}

template <class T>
Poly<T> intersect(const Poly<T>& a, const Poly<T>& b) {
  return clip_all(a, hrep(b));
}

template <class T>
bool contains(const Poly<T>& poly, const P2<T>& q) {
  if (poly.size() == 1) return poly[0] == q;
  if (poly.size() == 2) {
    if (orient(poly[0], poly[1], q) != 0) return false;
    return sgn(dot(q - poly[0], poly[1] - poly[0])) >= 0 && sgn(dot(q - poly[1], poly[0] - poly[1])) >= 0;
  }
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (orient(poly[i], poly[(i + 1) % poly.size()], q) < 0) return false;
  return true;
}

template <class T>
bool contains_all(const Poly<T>& outer, const Poly<T>& inner) {
  return std::all_of(inner.begin(), inner.end(), [&](const P2<T>& v) { return contains(outer, v); });
}

namespace detail {
// Half-turn class of an edge direction when walking counterclockwise from the lexicographic minimum.
template <class T>
int half(const P2<T>& u) {
  int sx = sgn(u.x);
  return (sx > 0 || (sx == 0 && sgn(u.y) > 0)) ? 0 : 1;
}
template <class T>
bool angle_less(const P2<T>& u, const P2<T>& v) {
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return sgn(cross(u, v)) > 0;
}
}  // namespace detail

// Minkowski sum by merging edge sequences; falls back to hulling pairwise sums for degenerate inputs.
template <class T>
Poly<T> minkowski(const Poly<T>& a, const Poly<T>& b) {
  if (a.size() < 3 || b.size() < 3) {
    Poly<T> pts;
    pts.reserve(a.size() * b.size());
    for (const auto& u : a)
      for (const auto& v : b) pts.push_back(u + v);
    return hull(std::move(pts));
  }
  const std::size_t n = a.size(), m = b.size();
  Poly<T> out;
  out.reserve(n + m);
  std::size_t i = 0, j = 0;
  P2<T> cur = a[0] + b[0];
  out.push_back(cur);
  while (i < n || j < m) {
    P2<T> ea = a[(i + 1) % n] - a[i % n];
    P2<T> eb = b[(j + 1) % m] - b[j % m];
    bool take_a;
    if (i == n)
      take_a = false;
    else if (j == m)
      take_a = true;
    else
      take_a = !detail::angle_less(eb, ea);
    cur = take_a ? cur + ea : cur + eb;
    if (take_a)
      ++i;
    else
      ++j;
    out.push_back(cur);
  }
  out.pop_back();
  return normalize_ccw(out);
}

template <class T>
Poly<T> scale(const Poly<T>& a, const T& s) {
  Poly<T> out;
  out.reserve(a.size());
  for (const auto& v : a) out.push_back(s * v);
  return hull(std::move(out));
}

template <class T>
Poly<T> translate(const Poly<T>& a, const P2<T>& t) {
  Poly<T> out;
  out.reserve(a.size());
  for (const auto& v : a) out.push_back(v + t);
  return out;
}

// Closest point of segment [a,b] to q (exact for rationals).
template <class T>
P2<T> closest_on_segment(const P2<T>& a, const P2<T>& b, const P2<T>& q) {
  P2<T> d = b - a;
  T len = dot(d, d);
  if (sgn(len) == 0) return a;
  T t = dot(q - a, d) / len;
  if (t <= T(0)) return a;
  if (t >= T(1)) return b;
  return a + t * d;
}

template <class T>
P2<T> closest_point(const Poly<T>& poly, const P2<T>& q) {
  if (poly.size() == 1) return poly[0];
  if (poly.size() >= 3 && contains(poly, q)) return q;
  P2<T> best = poly[0];
  T bd = dot(q - best, q - best);
  const std::size_t edges = poly.size() == 2 ? 1 : poly.size();
  for (std::size_t i = 0; i < edges; ++i) {
    P2<T> c = closest_on_segment(poly[i], poly[(i + 1) % poly.size()], q);
    T d = dot(q - c, q - c);
    if (d < bd) {
      bd = d;
      best = c;
    }
  }
  return best;
}

template <class T>
T dist_sq(const Poly<T>& poly, const P2<T>& q) {
  P2<T> c = closest_point(poly, q);
  return dot(q - c, q - c);
}

// One-sided excess max_{a in A} dist(a, B)^2; attained at a vertex of A.
template <class T>
T excess_sq(const Poly<T>& a, const Poly<T>& b) {
  T best(0);
  for (const auto& v : a) {
    T d = dist_sq(b, v);
    if (d > best) best = d;
  }
  return best;
}

template <class T>
T area2(const Poly<T>& poly) {
  T s(0);
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return s;
}

// Smallest distance between two parallel support lines, i.e. the polygon width.
template <class T>
double width(const Poly<T>& poly) {
  if (poly.size() < 3) return 0.0;
  double best = -1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    P2<T> d = b - a;
    double len = std::sqrt(to_double(dot(d, d)));
    double far = 0;
    for (const auto& v : poly) far = std::max(far, to_double(cross(d, v - a)) / len);
    if (best < 0 || far < best) best = far;
  }
  return best;
}

// Outward edge normals, one per edge (two opposite ones for a segment, none for a point).
template <class T>
std::vector<P2<T>> edge_normals(const Poly<T>& poly) {
  std::vector<P2<T>> out;
  if (poly.size() == 2) {
    P2<T> d = poly[1] - poly[0];
    out.push_back({d.y, -d.x});
    out.push_back({-d.y, d.x});
  } else if (poly.size() >= 3) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      P2<T> d = poly[(i + 1) % poly.size()] - poly[i];
      out.push_back({d.y, -d.x});
    }
  }
  return out;
}

// Sorts directions counterclockwise by angle starting from the positive x-axis and
// removes positive multiples of each other.
template <class T>
void sort_directions(std::vector<P2<T>>& dirs) {
  auto half = [](const P2<T>& u) {
    int sy = sgn(u.y);
    return (sy > 0 || (sy == 0 && sgn(u.x) > 0)) ? 0 : 1;
  };
  std::sort(dirs.begin(), dirs.end(), [&](const P2<T>& u, const P2<T>& v) {
    int hu = half(u), hv = half(v);
    if (hu != hv) return hu < hv;
    return sgn(cross(u, v)) > 0;
  });
  auto same = [](const P2<T>& u, const P2<T>& v) { return sgn(cross(u, v)) == 0 && sgn(dot(u, v)) > 0; };
  dirs.erase(std::unique(dirs.begin(), dirs.end(), same), dirs.end());
  while (dirs.size() > 1 && same(dirs.front(), dirs.back())) dirs.pop_back();
}

// A closed cone of directions on which both (X)_p and (Y)_p are linear, so
// (X)_p - (Y)_p = p.g there. `from`/`to` bound the cone counterclockwise;
// `whole` marks the single cone covering every direction (X and Y both points).
template <class T>
struct FanCone {
  P2<T> from, to;
  bool whole = false;
  P2<T> g;
  P2<T> interior;  // a direction strictly inside the cone
};

template <class T>
std::vector<FanCone<T>> support_fan(const Poly<T>& x, const Poly<T>& y) {
  std::vector<P2<T>> dirs = edge_normals(x);
  auto ny = edge_normals(y);
  dirs.insert(dirs.end(), ny.begin(), ny.end());
  sort_directions(dirs);
  std::vector<FanCone<T>> out;
  if (dirs.empty()) {
    FanCone<T> c;
    c.whole = true;
    c.g = x[0] - y[0];
    c.interior = {T(1), T(0)};
    out.push_back(c);
    return out;
  }
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    FanCone<T> c;
    c.from = dirs[i];
    c.to = dirs[(i + 1) % dirs.size()];
    // Cones never exceed a half-turn: a polygon's normals are less than a half-turn
    // apart and a segment contributes two opposite normals.
    c.interior = sgn(cross(c.from, c.to)) > 0 ? c.from + c.to : rot90(c.from);
    c.g = x[argmax(x, c.interior)] - y[argmax(y, c.interior)];
    out.push_back(c);
  }
  return out;
}

// The set of points w with q.(w - g) >= 0 for every q in the cone, as halfplanes.
// A convex Z satisfies (Z)_q >= q.g on the whole cone iff Z meets this region.
template <class T>
std::vector<HalfPlane<T>> dual_region(const FanCone<T>& c) {
  std::vector<HalfPlane<T>> hs;
  if (c.whole) {
    hs.push_back({{T(1), T(0)}, c.g.x});
    hs.push_back({{T(-1), T(0)}, -c.g.x});
    hs.push_back({{T(0), T(1)}, c.g.y});
    hs.push_back({{T(0), T(-1)}, -c.g.y});
    return hs;
  }
  hs.push_back({-c.from, -dot(c.from, c.g)});
  hs.push_back({-c.to, -dot(c.to, c.g)});
  if (sgn(cross(c.from, c.to)) == 0) {
    P2<T> r = rot90(c.from);
    hs.push_back({-r, -dot(r, c.g)});
  }
  return hs;
}

// sup over unit p in the cone of p.g (double; the sup of a linear form on an arc).
template <class T>
double arc_max(const FanCone<T>& c) {
  double gx = to_double(c.g.x), gy = to_double(c.g.y);
  double gn = std::hypot(gx, gy);
  if (c.whole) return gn;
  P2<T> g = c.g;
  bool inside;
  if (sgn(cross(c.from, c.to)) > 0)
    inside = sgn(cross(c.from, g)) >= 0 && sgn(cross(g, c.to)) >= 0;
  else
    inside = sgn(cross(c.from, g)) >= 0;
  if (inside && gn > 0) return gn;
  auto val = [&](const P2<T>& d) {
    double dx = to_double(d.x), dy = to_double(d.y);
    return (dx * gx + dy * gy) / std::hypot(dx, dy);
  };
  return std::max(val(c.from), val(c.to));
}

}  // namespace convexdiff::planar
