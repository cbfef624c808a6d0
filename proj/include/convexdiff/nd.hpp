#pragma once

// Brute-force polytope routines for arbitrary (small) dimension: extreme-point
// filtering and membership via linear programming, facet enumeration over
// vertex subsets, and vertex enumeration over constraint subsets.

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "convexdiff/lp.hpp"
#include "convexdiff/vector.hpp"

namespace convexdiff::nd {

// {z : normal.z <= level}
template <class T>
struct Constraint {
  Vec<T> normal;
  T level;
};

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && sgn(a[p][c]) == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    T pv = a[r][c];
    for (auto& v : a[r]) v /= pv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      T f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of {x : a x = 0} for a matrix with `cols` columns.
template <class T>
std::vector<Vec<T>> null_space(Matrix<T> a, std::size_t cols) {
  auto piv = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(cols);
    v[f] = T(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Unique solution of a square system, if any.
template <class T>
std::optional<Vec<T>> solve_square(Matrix<T> a, const std::vector<T>& b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto piv = rref(a, n);
  if (piv.size() < n) return std::nullopt;
  Vec<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

template <class T>
bool in_hull(const std::vector<Vec<T>>& pts, const Vec<T>& q) {
  const std::size_t d = q.dim(), n = pts.size();
  Matrix<T> rows(d + 1, std::vector<T>(n, T(0)));
  std::vector<T> rhs(d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = pts[j][i];
    rhs[i] = q[i];
  }
  for (std::size_t j = 0; j < n; ++j) rows[d][j] = T(1);
  rhs[d] = T(1);
  return lp::feasible(std::move(rows), std::move(rhs));
}

template <class T>
std::vector<Vec<T>> dedupe_sorted(std::vector<Vec<T>> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec<T>& a, const Vec<T>& b) { return lex_less(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Extreme points of conv(pts), lexicographically sorted.
template <class T>
std::vector<Vec<T>> extreme_points(std::vector<Vec<T>> pts) {
  pts = dedupe_sorted(std::move(pts));
  if (pts.size() <= 2) return pts;
  std::vector<bool> keep(pts.size(), true);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec<T>> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i && keep[j]) others.push_back(pts[j]);
    if (in_hull(others, pts[i])) keep[i] = false;
  }
  std::vector<Vec<T>> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (keep[i]) out.push_back(pts[i]);
  return out;
}

// Iterates over all k-subsets of {0..n-1}; stops early when f returns false.
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <class T>
Vec<T> normalize_direction(Vec<T> a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (sgn(a[i]) != 0) {
      T s = abs_value(a[i]);
      for (std::size_t j = 0; j < a.dim(); ++j) a[j] /= s;
      break;
    }
  return a;
}

// Inequality description of conv(vertices): equalities of the affine hull as
// opposite pairs plus the facets inside it.
template <class T>
std::vector<Constraint<T>> facets(const std::vector<Vec<T>>& verts) {
  const std::size_t d = verts[0].dim();
  const Vec<T>& v0 = verts[0];
  Matrix<T> diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) diffs.push_back((verts[i] - v0).coords());
  std::vector<Constraint<T>> out;

  Matrix<T> red = diffs;
  auto piv = diffs.empty() ? std::vector<std::size_t>{} : rref(red, d);
  const std::size_t k = piv.size();
  std::vector<Vec<T>> span;
  for (std::size_t r = 0; r < k; ++r) span.emplace_back(std::vector<T>(red[r].begin(), red[r].end()));

  // Equalities: normals orthogonal to the affine hull directions.
  std::vector<Vec<T>> normals =
      k == 0 ? std::vector<Vec<T>>{} : null_space<T>(Matrix<T>(red.begin(), red.begin() + static_cast<long>(k)), d);
  if (k == 0)
    for (std::size_t i = 0; i < d; ++i) normals.push_back(unit_axis<T>(d, i));
  for (const auto& n : normals) {
    T lv = dot(n, v0);
    out.push_back({n, lv});
    out.push_back({-n, -lv});
  }
  if (k == 0) return out;

  if (k == 1) {
    // Segment: the two endpoints along the line direction.
    const Vec<T>& dir = span[0];
    auto [lo, hi] = std::minmax_element(verts.begin(), verts.end(),
                                        [&](const Vec<T>& a, const Vec<T>& b) { return dot(a, dir) < dot(b, dir); });
    out.push_back({dir, dot(*hi, dir)});
    out.push_back({-dir, -dot(*lo, dir)});
    return out;
  }

  std::vector<Constraint<T>> ineq;
  for_each_subset(verts.size(), k, [&](const std::vector<std::size_t>& s) {
    // Normal a = sum c_j span_j with a.(v_s - v_s0) = 0.
    Matrix<T> m;
    for (std::size_t i = 1; i < s.size(); ++i) {
      Vec<T> e = verts[s[i]] - verts[s[0]];
      std::vector<T> row;
      for (const auto& b : span) row.push_back(dot(b, e));
      m.push_back(std::move(row));
    }
    auto ns = null_space<T>(m, k);
    if (ns.size() != 1) return true;
    Vec<T> a(d);
    for (std::size_t j = 0; j < k; ++j) a += span[j] * ns[0][j];
    T lv = dot(a, verts[s[0]]);
    int side = 0;
    for (const auto& v : verts) {
      int c = cmp(dot(a, v), lv);
      if (c == 0) continue;
      if (side == 0) side = c;
      if (c != side) return true;
    }
    if (side == 0) return true;
    if (side > 0) {
      a = -a;
      lv = -lv;
    }
    T scale_ref(0);
    for (std::size_t i = 0; i < d; ++i)
      if (sgn(a[i]) != 0) {
        scale_ref = abs_value(a[i]);
        break;
      }
    a *= T(1) / scale_ref;
    lv /= scale_ref;
    for (const auto& c : ineq)
      if (c.normal == a && cmp(c.level, lv) == 0) return true;
    ineq.push_back({a, lv});
    return true;
  });
  out.insert(out.end(), ineq.begin(), ineq.end());
  return out;
}

template <class T>
bool satisfies(const std::vector<Constraint<T>>& cs, const Vec<T>& z) {
  return std::all_of(cs.begin(), cs.end(), [&](const Constraint<T>& c) { return cmp(dot(c.normal, z), c.level) <= 0; });
}

// Vertices of a bounded polyhedron given by inequalities; empty if infeasible.
template <class T>
std::vector<Vec<T>> vertices(const std::vector<Constraint<T>>& cs, std::size_t d) {
  std::vector<Vec<T>> found;
  for_each_subset(cs.size(), d, [&](const std::vector<std::size_t>& s) {
    Matrix<T> a;
    std::vector<T> b;
    for (auto i : s) {
      a.push_back(cs[i].normal.coords());
      b.push_back(cs[i].level);
    }
    auto z = solve_square(std::move(a), b);
    if (z && satisfies(cs, *z)) found.push_back(std::move(*z));
    return true;
  });
  return dedupe_sorted(std::move(found));
}

}  // namespace convexdiff::nd
