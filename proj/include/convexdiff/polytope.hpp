#pragma once

// Compact convex polytopes in V-representation and the basic calculus on them:
// hull, support function, Minkowski sum, scaling, containment, intersection,
// Hausdorff distance and norm. Everything is exact in rational mode; distances
// that need a square root are reported as doubles alongside exact squares.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "convexdiff/errors.hpp"
#include "convexdiff/nd.hpp"
#include "convexdiff/planar.hpp"
#include "convexdiff/vector.hpp"

namespace convexdiff {

inline constexpr std::size_t kMaxIntersectDim = 4;

template <class T>
class Polytope {
 public:
  // Canonical V-representation of conv(points).
  static Polytope hull(std::vector<Vec<T>> points) {
    if (points.empty()) throw InvalidArgument("hull of an empty point set");
    const std::size_t d = points[0].dim();
    if (d == 0) throw InvalidArgument("ambient dimension must be at least 1");
    for (const auto& p : points) require_same_dim(d, p.dim());
    Polytope out;
    out.dim_ = d;
    if (d == 1) {
      auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                          [](const Vec<T>& a, const Vec<T>& b) { return cmp(a[0], b[0]) < 0; });
      out.verts_.push_back(*lo);
      if (!(*lo == *hi)) out.verts_.push_back(*hi);
    } else if (d == 2) {
      planar::Poly<T> pts;
      pts.reserve(points.size());
      for (const auto& p : points) pts.push_back(planar::to_p2(p));
      return from_planar(planar::hull(std::move(pts)));
    } else {
      out.verts_ = nd::extreme_points(std::move(points));
    }
    return out;
  }

  static Polytope point(Vec<T> v) { return hull({std::move(v)}); }
  static Polytope origin(std::size_t d) { return point(Vec<T>(d)); }

  // Takes a polygon already in canonical planar form.
  static Polytope from_planar(const planar::Poly<T>& poly) {
    Polytope out;
    out.dim_ = 2;
    out.verts_.reserve(poly.size());
    for (const auto& p : poly) out.verts_.push_back(planar::to_vec(p));
    return out;
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Vec<T>>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }

  planar::Poly<T> planar() const {
    if (dim_ != 2) throw UnsupportedDimension(dim_, "planar view");
    planar::Poly<T> p;
    p.reserve(verts_.size());
    for (const auto& v : verts_) p.push_back(planar::to_p2(v));
    return p;
  }

  friend bool operator==(const Polytope& a, const Polytope& b) { return a.dim_ == b.dim_ && a.verts_ == b.verts_; }

 private:
  Polytope() = default;
  std::size_t dim_ = 0;
  std::vector<Vec<T>> verts_;
};

template <class T>
struct Halfspace {
  Vec<T> normal;
  T level;

  Halfspace(Vec<T> n, T s) : normal(std::move(n)), level(std::move(s)) {
    if (normal.is_zero()) throw InvalidArgument("halfspace normal must be nonzero");
  }
};

template <class T>
struct SupportResult {
  T value;
  Polytope<T> face;
};

template <class T>
SupportResult<T> support(const Polytope<T>& x, const Vec<T>& p) {
  require_same_dim(x.dim(), p.dim());
  T best = dot(x.vertices()[0], p);
  for (const auto& v : x.vertices()) {
    T val = dot(v, p);
    if (val > best) best = val;
  }
  std::vector<Vec<T>> face;
  for (const auto& v : x.vertices())
    if (cmp(dot(v, p), best) == 0) face.push_back(v);
  return {best, Polytope<T>::hull(std::move(face))};
}

template <class T>
T support_value(const Polytope<T>& x, const Vec<T>& p) {
  require_same_dim(x.dim(), p.dim());
  T best = dot(x.vertices()[0], p);
  for (const auto& v : x.vertices()) {
    T val = dot(v, p);
    if (val > best) best = std::move(val);
  }
  return best;
}

template <class T>
Polytope<T> minkowski_sum(const Polytope<T>& x, const Polytope<T>& y) {
  require_same_dim(x.dim(), y.dim());
  if (x.dim() == 2) return Polytope<T>::from_planar(planar::minkowski(x.planar(), y.planar()));
  std::vector<Vec<T>> pts;
  for (const auto& a : x.vertices())
    for (const auto& b : y.vertices()) pts.push_back(a + b);
  return Polytope<T>::hull(std::move(pts));
}

template <class T>
Polytope<T> scale(const Polytope<T>& x, const T& alpha) {
  std::vector<Vec<T>> pts;
  for (const auto& v : x.vertices()) pts.push_back(alpha * v);
  return Polytope<T>::hull(std::move(pts));
}

template <class T>
Polytope<T> negate(const Polytope<T>& x) {
  return scale(x, T(-1));
}

template <class T>
Polytope<T> translate(const Polytope<T>& x, const Vec<T>& v) {
  std::vector<Vec<T>> pts;
  for (const auto& u : x.vertices()) pts.push_back(u + v);
  return Polytope<T>::hull(std::move(pts));
}

template <class T, class U>
Polytope<T> convert(const Polytope<U>& x) {
  std::vector<Vec<T>> pts;
  for (const auto& u : x.vertices()) pts.push_back(convert<T>(u));
  return Polytope<T>::hull(std::move(pts));
}

template <class T>
bool contains_point(const Polytope<T>& x, const Vec<T>& v) {
  require_same_dim(x.dim(), v.dim());
  if (x.dim() == 1) {
    return cmp(x.vertices().front()[0], v[0]) <= 0 && cmp(v[0], x.vertices().back()[0]) <= 0;
  }
  if (x.dim() == 2) return planar::contains(x.planar(), planar::to_p2(v));
  return nd::in_hull(x.vertices(), v);
}

// True iff inner is a subset of outer (checked on the vertices of inner).
template <class T>
bool contains_set(const Polytope<T>& inner, const Polytope<T>& outer) {
  require_same_dim(inner.dim(), outer.dim());
  if (inner.dim() == 2) return planar::contains_all(outer.planar(), inner.planar());
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](const Vec<T>& v) { return contains_point(outer, v); });
}

template <class T>
std::vector<nd::Constraint<T>> constraints_of(const Polytope<T>& x) {
  return nd::facets(x.vertices());
}

template <class T>
std::optional<Polytope<T>> from_constraints(const std::vector<nd::Constraint<T>>& cs, std::size_t d) {
  auto v = nd::vertices(cs, d);
  if (v.empty()) return std::nullopt;
  return Polytope<T>::hull(std::move(v));
}

template <class T>
std::optional<Polytope<T>> intersect(const Polytope<T>& x, const Polytope<T>& y) {
  require_same_dim(x.dim(), y.dim());
  const std::size_t d = x.dim();
  if (d == 2) {
    auto r = planar::intersect(x.planar(), y.planar());
    if (r.empty()) return std::nullopt;
    return Polytope<T>::from_planar(r);
  }
  if (d == 1) {
    const T& lo = cmp(x.vertices().front()[0], y.vertices().front()[0]) >= 0 ? x.vertices().front()[0]
                                                                             : y.vertices().front()[0];
    const T& hi = cmp(x.vertices().back()[0], y.vertices().back()[0]) <= 0 ? x.vertices().back()[0]
                                                                           : y.vertices().back()[0];
    if (cmp(lo, hi) > 0) return std::nullopt;
    return Polytope<T>::hull({Vec<T>{lo}, Vec<T>{hi}});
  }
  if (d > kMaxIntersectDim) throw UnsupportedDimension(d, "intersection");
  auto cs = constraints_of(x);
  auto cy = constraints_of(y);
  cs.insert(cs.end(), cy.begin(), cy.end());
  return from_constraints(cs, d);
}

// Clips x by each halfspace in order.
template <class T>
std::optional<Polytope<T>> intersect_halfspaces(const Polytope<T>& x, const std::vector<Halfspace<T>>& hs) {
  for (const auto& h : hs) require_same_dim(x.dim(), h.normal.dim());
  const std::size_t d = x.dim();
  if (d == 2) {
    auto poly = x.planar();
    for (const auto& h : hs) {
      poly = planar::clip(poly, {planar::to_p2(h.normal), h.level});
      if (poly.empty()) return std::nullopt;
    }
    return Polytope<T>::from_planar(poly);
  }
  if (d == 1) {
    std::optional<Polytope<T>> cur = x;
    for (const auto& h : hs) {
      // n * z <= s on the line.
      T bound = h.level / h.normal[0];
      Polytope<T> ray = sgn(h.normal[0]) > 0
                            ? Polytope<T>::hull({Vec<T>{bound}, Vec<T>{std::min(bound, cur->vertices().front()[0])}})
                            : Polytope<T>::hull({Vec<T>{bound}, Vec<T>{std::max(bound, cur->vertices().back()[0])}});
      cur = intersect(*cur, ray);
      if (!cur) return std::nullopt;
    }
    return cur;
  }
  if (d > kMaxIntersectDim) throw UnsupportedDimension(d, "halfspace clipping");
  auto cs = constraints_of(x);
  for (const auto& h : hs) cs.push_back({h.normal, h.level});
  return from_constraints(cs, d);
}

template <class T>
T norm_sq(const Polytope<T>& x) {
  T best(0);
  for (const auto& v : x.vertices()) {
    T n = norm_sq(v);
    if (n > best) best = n;
  }
  return best;
}

template <class T>
double norm(const Polytope<T>& x) {
  return std::sqrt(to_double(norm_sq(x)));
}

namespace detail {

// Wolfe's minimum-norm-point algorithm over conv(pts), in double precision.
inline std::vector<double> min_norm_point(const std::vector<std::vector<double>>& pts) {
  const std::size_t d = pts[0].size();
  auto dotd = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < d; ++i) s += a[i] * b[i];
    return s;
  };
  double scale = 0;
  for (const auto& p : pts) scale = std::max(scale, dotd(p, p));
  const double tol = 1e-12 * std::max(scale, 1.0);
  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (dotd(pts[i], pts[i]) < dotd(pts[start], pts[start])) start = i;
  std::vector<std::size_t> s{start};
  std::vector<double> lam{1.0};
  std::vector<double> x = pts[start];
  for (int outer = 0; outer < 1000; ++outer) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (dotd(x, pts[i]) < dotd(x, pts[j])) j = i;
    if (dotd(x, pts[j]) >= dotd(x, x) - tol) break;
    if (std::find(s.begin(), s.end(), j) != s.end()) break;
    s.push_back(j);
    lam.push_back(0.0);
    for (int inner = 0; inner < 1000; ++inner) {
      // Affine minimizer: solve [G 1; 1^T 0][a; mu] = [0; 1].
      const std::size_t k = s.size();
      std::vector<std::vector<double>> m(k + 1, std::vector<double>(k + 2, 0.0));
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) m[a][b] = dotd(pts[s[a]], pts[s[b]]);
        m[a][k] = 1.0;
        m[k][a] = 1.0;
      }
      m[k][k + 1] = 1.0;
      for (std::size_t c = 0; c <= k; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r <= k; ++r)
          if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
        std::swap(m[c], m[p]);
        if (std::fabs(m[c][c]) < 1e-300) continue;
        for (std::size_t r = 0; r <= k; ++r) {
          if (r == c) continue;
          double f = m[r][c] / m[c][c];
          for (std::size_t q = c; q <= k + 1; ++q) m[r][q] -= f * m[c][q];
        }
      }
      std::vector<double> alpha(k);
      for (std::size_t a = 0; a < k; ++a) alpha[a] = std::fabs(m[a][a]) < 1e-300 ? 0.0 : m[a][k + 1] / m[a][a];
      bool all_pos = std::all_of(alpha.begin(), alpha.end(), [](double v) { return v > 1e-15; });
      if (all_pos) {
        lam = alpha;
        break;
      }
      double theta = 1.0;
      for (std::size_t a = 0; a < k; ++a)
        if (alpha[a] <= 1e-15) theta = std::min(theta, lam[a] / (lam[a] - alpha[a]));
      for (std::size_t a = 0; a < k; ++a) lam[a] = (1 - theta) * lam[a] + theta * alpha[a];
      std::vector<std::size_t> s2;
      std::vector<double> l2;
      for (std::size_t a = 0; a < k; ++a)
        if (lam[a] > 1e-15) {
          s2.push_back(s[a]);
          l2.push_back(lam[a]);
        }
      s = std::move(s2);
      lam = std::move(l2);
    }
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t i = 0; i < d; ++i) x[i] += lam[a] * pts[s[a]][i];
  }
  return x;
}

template <class T>
double dist_to(const Polytope<T>& y, const Vec<T>& q) {
  std::vector<std::vector<double>> pts;
  for (const auto& v : y.vertices()) {
    std::vector<double> row;
    for (std::size_t i = 0; i < q.dim(); ++i) row.push_back(to_double(v[i]) - to_double(q[i]));
    pts.push_back(std::move(row));
  }
  auto x = min_norm_point(pts);
  double s = 0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

}  // namespace detail

// Exact squared Hausdorff distance (d <= 2).
template <class T>
T hausdorff_sq(const Polytope<T>& x, const Polytope<T>& y) {
  require_same_dim(x.dim(), y.dim());
  if (x.dim() == 1) {
    T a = abs_value(T(x.vertices().front()[0] - y.vertices().front()[0]));
    T b = abs_value(T(x.vertices().back()[0] - y.vertices().back()[0]));
    T m = a > b ? a : b;
    return m * m;
  }
  if (x.dim() != 2) throw UnsupportedDimension(x.dim(), "exact Hausdorff distance");
  auto px = x.planar(), py = y.planar();
  T a = planar::excess_sq(px, py), b = planar::excess_sq(py, px);
  return a > b ? a : b;
}

template <class T>
double hausdorff(const Polytope<T>& x, const Polytope<T>& y) {
  require_same_dim(x.dim(), y.dim());
  if (x.dim() <= 2) return std::sqrt(to_double(hausdorff_sq(x, y)));
  double best = 0;
  for (const auto& v : x.vertices()) best = std::max(best, detail::dist_to(y, v));
  for (const auto& v : y.vertices()) best = std::max(best, detail::dist_to(x, v));
  return best;
}

// Exact unit vector close to angle theta: a rational point on the circle obtained
// from a dyadic tangent of the half-angle.
template <class T>
Vec<T> unit_direction(double theta, int bits = 20) {
  if constexpr (!Num<T>::exact) {
    return Vec<T>{T(std::cos(theta)), T(std::sin(theta))};
  } else {
    const double quarter = std::numbers::pi / 2;
    long k = std::lround(theta / quarter);
    double rest = theta - static_cast<double>(k) * quarter;
    T denom = T(1);
    for (int i = 0; i < bits; ++i) denom *= T(2);
    T t = T(static_cast<long long>(std::llround(std::tan(rest / 2) * std::ldexp(1.0, bits)))) / denom;
    T c = (T(1) - t * t) / (T(1) + t * t);
    T s = (T(2) * t) / (T(1) + t * t);
    switch (((k % 4) + 4) % 4) {
      case 0: return Vec<T>{c, s};
      case 1: return Vec<T>{T(-s), c};
      case 2: return Vec<T>{T(-c), T(-s)};
      default: return Vec<T>{s, T(-c)};
    }
  }
}

// Regular m-gon inscribed in the unit circle; its vertices have exact unit norm
// in rational mode.
template <class T>
Polytope<T> unit_ball(std::size_t m) {
  if (m < 3) throw InvalidArgument("ball approximation needs at least 3 vertices");
  std::vector<Vec<T>> pts;
  for (std::size_t k = 0; k < m; ++k)
    pts.push_back(unit_direction<T>(2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m)));
  return Polytope<T>::hull(std::move(pts));
}

// 1 - inradius of an inscribed ball polygon: how far it falls short of the disc.
template <class T>
double ball_deficiency(const Polytope<T>& ball) {
  auto p = ball.planar();
  double r = 1.0;
  for (const auto& h : planar::hrep(p)) {
    double n = std::hypot(to_double(h.n.x), to_double(h.n.y));
    r = std::min(r, to_double(h.s) / n);
  }
  return 1.0 - r;
}

inline double nominal_ball_deficiency(std::size_t m) { return 1.0 - std::cos(std::numbers::pi / static_cast<double>(m)); }

// Inclusion form inf{eps : X in Y + eps*B and Y in X + eps*B} for a polygonal ball B (2D, exact).
template <class T>
T hausdorff_inclusion(const Polytope<T>& x, const Polytope<T>& y, const Polytope<T>& ball) {
  require_same_dim(x.dim(), 2);
  require_same_dim(y.dim(), 2);
  auto one_sided = [&](const planar::Poly<T>& a, const planar::Poly<T>& b) {
    // a in b + eps*B iff q.v <= (b)_q + eps*(B)_q for every facet normal q of b + eps*B.
    auto qs = planar::edge_normals(b);
    auto bn = planar::edge_normals(ball.planar());
    qs.insert(qs.end(), bn.begin(), bn.end());
    auto bp = ball.planar();
    T best(0);
    for (const auto& q : qs) {
      T hb = planar::support(bp, q);
      T sb = planar::support(b, q);
      for (const auto& v : a) {
        T need = (planar::dot(q, v) - sb) / hb;
        if (need > best) best = need;
      }
    }
    return best;
  };
  auto px = x.planar(), py = y.planar();
  T a = one_sided(px, py), b = one_sided(py, px);
  return a > b ? a : b;
}

// sup over unit p of (X)_p - (Y)_p, evaluated exactly cone by cone (2D).
// For Y inside X this is the Hausdorff distance.
template <class T>
double support_gap_sup(const Polytope<T>& x, const Polytope<T>& y) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : planar::support_fan(x.planar(), y.planar())) best = std::max(best, planar::arc_max(c));
  return best;
}

// The displayed variant sup_{p in B}(X)_p - inf_{p in B}(Y)_p, kept only to compare against.
template <class T>
double support_split_formula(const Polytope<T>& x, const Polytope<T>& y) {
  double inf_y = 0.0;  // p = 0 is in B
  auto py = y.planar();
  if (!planar::contains(py, planar::P2<T>{T(0), T(0)}))
    inf_y = -std::sqrt(to_double(planar::dist_sq(py, planar::P2<T>{T(0), T(0)})));
  return norm(x) - inf_y;
}

// m directions at angles offset + 2*pi*k/m, as exact rational unit vectors in rational mode.
template <class T>
std::vector<Vec<T>> direction_circle(std::size_t m, double offset = 0.0) {
  std::vector<Vec<T>> out;
  for (std::size_t k = 0; k < m; ++k)
    out.push_back(unit_direction<T>(offset + 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m)));
  return out;
}

}  // namespace convexdiff
