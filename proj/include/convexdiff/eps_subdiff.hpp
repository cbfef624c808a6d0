#pragma once

// Epsilon-subdifferentials of max-affine functions f(x) = max_i a_i.x + b_i.
// With gap_i = f(x) - (a_i.x + b_i) >= 0,
//   D(eps) = { sum l_i a_i : l in the simplex, sum l_i gap_i <= eps },
// the image of the simplex cut by one halfspace. The cut simplex has vertices
// e_i (gap_i <= eps) and one point on each edge e_i e_j with
// gap_i < eps < gap_j, so D(eps) is the hull of their images.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "convexdiff/collection.hpp"
#include "convexdiff/nd.hpp"
#include "convexdiff/polytope.hpp"
#include "convexdiff/random.hpp"

namespace convexdiff {

template <class T>
struct AffinePiece {
  Vec<T> a;
  T b;
};

template <class T>
class PWLConvexFunction {
 public:
  explicit PWLConvexFunction(std::vector<AffinePiece<T>> pieces) {
    if (pieces.empty()) throw InvalidArgument("a max-affine function needs at least one piece");
    const std::size_t d = pieces[0].a.dim();
    if (d == 0) throw InvalidArgument("piece gradients must have dimension at least 1");
    for (auto& p : pieces) {
      require_same_dim(d, p.a.dim());
      bool dup = std::any_of(pieces_.begin(), pieces_.end(),
                             [&](const AffinePiece<T>& q) { return q.a == p.a && cmp(q.b, p.b) == 0; });
      if (!dup) pieces_.push_back(std::move(p));
    }
  }

  std::size_t dim() const { return pieces_[0].a.dim(); }
  const std::vector<AffinePiece<T>>& pieces() const { return pieces_; }

 private:
  std::vector<AffinePiece<T>> pieces_;
};

template <class T>
struct Evaluation {
  T value;
  std::vector<std::size_t> active;
};

template <class T>
Evaluation<T> eval(const PWLConvexFunction<T>& f, const Vec<T>& x) {
  require_same_dim(f.dim(), x.dim());
  const auto& ps = f.pieces();
  std::vector<T> v;
  v.reserve(ps.size());
  for (const auto& p : ps) v.push_back(dot(p.a, x) + p.b);
  Evaluation<T> out{*std::max_element(v.begin(), v.end()), {}};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (cmp(v[i], out.value) == 0) out.active.push_back(i);
  return out;
}

template <class T>
T value_at(const PWLConvexFunction<T>& f, const Vec<T>& x) {
  T best = dot(f.pieces()[0].a, x) + f.pieces()[0].b;
  for (const auto& p : f.pieces()) {
    T v = dot(p.a, x) + p.b;
    if (v > best) best = std::move(v);
  }
  return best;
}

template <class T>
Polytope<T> eps_subdiff(const PWLConvexFunction<T>& f, const Vec<T>& x, const T& eps) {
  require_same_dim(f.dim(), x.dim());
  if (eps < T(0)) throw InvalidArgument("eps must be nonnegative");
  const auto& ps = f.pieces();
  const T fx = value_at(f, x);
  std::vector<T> gap;
  for (const auto& p : ps) gap.push_back(fx - (dot(p.a, x) + p.b));
  std::vector<Vec<T>> pts;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!(gap[i] <= eps)) continue;
    pts.push_back(ps[i].a);
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (!(gap[i] < eps && eps < gap[j])) continue;
      T lam = (gap[j] - eps) / (gap[j] - gap[i]);
      pts.push_back(ps[i].a * lam + ps[j].a * (T(1) - lam));
    }
  }
  return Polytope<T>::hull(std::move(pts));
}

// Largest gap at x: beyond it D(eps) is the hull of all gradients.
template <class T>
T max_gap(const PWLConvexFunction<T>& f, const Vec<T>& x) {
  const T fx = value_at(f, x);
  T best(0);
  for (const auto& p : f.pieces()) {
    T g = fx - (dot(p.a, x) + p.b);
    if (g > best) best = g;
  }
  return best;
}

struct SamplingGrid {
  double radius = 0;          // box half-width; 0 picks 10 (1 + max|a| + max|b| + |x|)
  std::size_t per_axis = 101;  // points per axis
  int far_decades = 6;        // rays at radius * 10^k, k = 1..far_decades
};

template <class T>
double default_radius(const PWLConvexFunction<T>& f, const Vec<T>& x) {
  double ma = 0, mb = 0;
  for (const auto& p : f.pieces()) {
    ma = std::max(ma, norm(p.a));
    mb = std::max(mb, std::abs(to_double(p.b)));
  }
  return 10 * (1 + ma + mb + norm(x));
}

// The sample points y used by the definitional oracle, all derived from f
// alone: a regular grid on the box around x; the points where d of the
// crossing hyperplanes {a_i.y + b_i = a_j.y + b_j} meet; in the plane, the
// points where crossing lines cut the grid lines; and far points along the
// axes, the diagonals and the directions +-(a_i - a_j) (plus their normals in
// the plane), at radius * 10^k.
template <class T>
std::vector<Vec<T>> oracle_samples(const PWLConvexFunction<T>& f, const Vec<T>& x, const SamplingGrid& grid) {
  const std::size_t d = x.dim();
  const double r = grid.radius > 0 ? grid.radius : default_radius(f, x);
  const T rad = Num<T>::from_double(std::ceil(r));
  const auto steps = static_cast<long long>(grid.per_axis - 1);
  auto coord = [&](std::size_t axis, long long k) { return x[axis] + rad * (T(2 * k - steps) / T(steps)); };
  std::vector<Vec<T>> out;
  std::vector<long long> idx(d, 0);
  for (;;) {
    Vec<T> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = coord(i, idx[i]);
    out.push_back(std::move(y));
    std::size_t i = 0;
    while (i < d && idx[i] == steps) idx[i++] = 0;
    if (i == d) break;
    ++idx[i];
  }

  const auto& ps = f.pieces();
  std::vector<nd::Constraint<T>> cross;  // (a_i - a_j).y = b_j - b_i
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (!(ps[i].a == ps[j].a)) cross.push_back({ps[i].a - ps[j].a, ps[j].b - ps[i].b});
  nd::for_each_subset(cross.size(), d, [&](const std::vector<std::size_t>& sub) {
    nd::Matrix<T> m;
    std::vector<T> rhs;
    for (auto k : sub) {
      m.push_back(cross[k].normal.coords());
      rhs.push_back(cross[k].level);
    }
    if (auto y = nd::solve_square(std::move(m), rhs)) out.push_back(std::move(*y));
    return true;
  });
  if (d == 2) {
    for (const auto& c : cross)
      for (std::size_t axis = 0; axis < 2; ++axis) {
        const std::size_t other = 1 - axis;
        if (sgn(c.normal[other]) == 0) continue;
        for (long long k = 0; k <= steps; ++k) {
          Vec<T> y(2);
          y[axis] = coord(axis, k);
          y[other] = (c.level - c.normal[axis] * y[axis]) / c.normal[other];
          out.push_back(std::move(y));
        }
      }
  }

  std::vector<Vec<T>> rays;
  for (std::size_t i = 0; i < d; ++i) {
    rays.push_back(unit_axis<T>(d, i));
    rays.push_back(unit_axis<T>(d, i, -1));
  }
  if (d >= 2) {
    std::vector<int> s(d, -1);
    for (;;) {
      Vec<T> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = T(s[i]);
      rays.push_back(v);
      std::size_t i = 0;
      while (i < d && s[i] == 1) s[i++] = -1;
      if (i == d) break;
      s[i] = 1;
    }
  }
  for (const auto& c : cross) {
    T l1(0);
    for (const auto& v : c.normal) l1 += abs_value(v);
    Vec<T> u = c.normal * (T(1) / l1);
    rays.push_back(u);
    rays.push_back(-u);
    if (d == 2) {
      rays.push_back(Vec<T>{T(-u[1]), u[0]});
      rays.push_back(Vec<T>{u[1], T(-u[0])});
    }
  }
  T scale_k = rad;
  for (int k = 1; k <= grid.far_decades; ++k) {
    scale_k *= T(10);
    for (const auto& v : rays) out.push_back(x + v * scale_k);
  }
  return out;
}

// True iff f(y) - f(x) >= g.(y - x) - eps at every sampled y.
template <class T>
bool eps_subdiff_oracle(const PWLConvexFunction<T>& f, const Vec<T>& x, const T& eps, const Vec<T>& g,
                        const std::vector<Vec<T>>& samples) {
  require_same_dim(f.dim(), g.dim());
  const T fx = value_at(f, x);
  return std::all_of(samples.begin(), samples.end(), [&](const Vec<T>& y) {
    return sgn(T(value_at(f, y) - fx - dot(g, Vec<T>(y - x)) + eps)) >= 0;
  });
}

template <class T>
bool eps_subdiff_oracle(const PWLConvexFunction<T>& f, const Vec<T>& x, const T& eps, const Vec<T>& g,
                        const SamplingGrid& grid = {}) {
  return eps_subdiff_oracle(f, x, eps, g, oracle_samples(f, x, grid));
}

// (1-t) D(e1) + t D(e2) is contained in D((1-t) e1 + t e2).
template <class T>
bool graph_convexity_check(const PWLConvexFunction<T>& f, const Vec<T>& x, const T& e1, const T& e2, const T& t) {
  if (t < T(0) || t > T(1)) throw InvalidArgument("t must lie in [0, 1]");
  auto lhs = minkowski_sum(scale(eps_subdiff(f, x, e1), T(1 - t)), scale(eps_subdiff(f, x, e2), t));
  return contains_set(lhs, eps_subdiff(f, x, T((1 - t) * e1 + t * e2)));
}

struct LipschitzProbe {
  double l_emp = 0;
  double l_bound = 0;
  std::size_t violations = 0;
  std::size_t pairs = 0;       // distinct pairs that entered the ratio
  std::size_t degenerate = 0;  // pairs with eps' = eps''
};

// Samples n pairs eps', eps'' on the grid eps - ups + 2 ups k / resolution.
template <class T>
LipschitzProbe lipschitz_probe(const PWLConvexFunction<T>& f, const Vec<T>& x, const T& eps, const T& ups,
                               std::size_t n, std::uint64_t seed, double tau = 1e-9, long long resolution = 1000) {
  if (!(ups > T(0)) || !(ups < eps)) throw InvalidArgument("need 0 < upsilon < eps");
  LipschitzProbe out;
  auto z = minkowski_sum(eps_subdiff(f, x, T(eps + ups)), negate(eps_subdiff(f, x, T(0))));
  out.l_bound = norm(z) / to_double(T(eps - ups));
  Rng rng(seed);
  const T lo = eps - ups, step = T(2) * ups / T(resolution);
  for (std::size_t k = 0; k < n; ++k) {
    T e1 = lo + step * T(rng.uniform_int(0, resolution));
    T e2 = lo + step * T(rng.uniform_int(0, resolution));
    if (cmp(e1, e2) == 0) {
      ++out.degenerate;
      continue;
    }
    ++out.pairs;
    double d = hausdorff(eps_subdiff(f, x, e1), eps_subdiff(f, x, e2));
    double de = std::abs(to_double(T(e1 - e2)));
    out.l_emp = std::max(out.l_emp, d / de);
    if (d > out.l_bound * de + tau) ++out.violations;
  }
  return out;
}

// Random max-affine function with integer-grid gradients and offsets.
template <class T>
PWLConvexFunction<T> random_pwl(Rng& rng, std::size_t d, std::size_t max_pieces = 6) {
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long long>(max_pieces)));
  std::vector<AffinePiece<T>> ps;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<T> a(d);
    for (std::size_t k = 0; k < d; ++k) a[k] = rng.grid_scalar<T>(-8, 8, 4);
    ps.push_back({a, rng.grid_scalar<T>(-8, 8, 4)});
  }
  return PWLConvexFunction<T>(std::move(ps));
}

}  // namespace convexdiff
