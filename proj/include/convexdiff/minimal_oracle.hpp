#pragma once

// Brute-force ground truth for small planar instances. Candidates are
// halfplane systems Z = {z : p_i.z <= s_i} with each level s_i taken from a
// finite ladder per direction. Starting from the top of every ladder, each
// level in turn is lowered to the lowest rung that keeps X in Y + Z; many
// coordinate orders give many candidates. A candidate is kept when a direct
// check confirms it is feasible and that no single level can drop by one rung.

#include <algorithm>
#include <numbers>
#include <vector>

#include "convexdiff/collection.hpp"
#include "convexdiff/minimal_element.hpp"
#include "convexdiff/random.hpp"

namespace convexdiff {

struct OracleOptions {
  std::size_t orders = 16;       // extra seeded random coordinate orders
  std::size_t budget = 200000;  // maximum number of feasibility checks
  std::uint64_t seed = 1;
};

template <class T>
struct OracleResult {
  std::vector<Polytope<T>> candidates;
  std::vector<planar::P2<T>> directions;
  std::vector<std::vector<T>> ladders;
  std::size_t checks = 0;
};

template <class T>
OracleResult<T> minimal_oracle(const Collection<T>& c, std::size_t m, std::size_t ladder, const OracleOptions& opt = {}) {
  if (c.dim() != 2) throw UnsupportedDimension(c.dim(), "minimal oracle");
  if (m < 3 || m > 24) throw InvalidArgument("oracle grid must have between 3 and 24 directions");
  if (ladder < 3 || ladder > 12) throw InvalidArgument("oracle ladder must have between 3 and 12 rungs");
  const auto px = c.minuend().planar();
  const auto py = c.subtrahend().planar();
  const auto z0 = trivial_element(c).planar();

  OracleResult<T> out;
  auto& dirs = out.directions;
  for (std::size_t k = 0; k < m; ++k) dirs.push_back(planar::to_p2(grid_direction<T>(2 * std::numbers::pi * double(k) / double(m))));
  for (const auto& n : planar::edge_normals(z0)) dirs.push_back(n);
  planar::sort_directions(dirs);

  // Rungs: floor = (X)_p - (Y)_p up to (Z0)_p, then one far rung outside Z0.
  T reach(1);
  for (const auto& v : z0) reach += abs_value(v.x) + abs_value(v.y);
  for (const auto& p : dirs) {
    const T lo = planar::support(px, p) - planar::support(py, p);
    const T hi = planar::support(z0, p);
    std::vector<T> rungs;
    for (std::size_t r = 0; r + 1 < ladder; ++r)
      rungs.push_back(lo + (hi - lo) * T(static_cast<long long>(r)) / T(static_cast<long long>(ladder - 2)));
    rungs.erase(std::unique(rungs.begin(), rungs.end(), [](const T& a, const T& b) { return cmp(a, b) == 0; }),
                rungs.end());
    rungs.push_back(hi + reach * (abs_value(p.x) + abs_value(p.y)));
    out.ladders.push_back(std::move(rungs));
  }
  const std::size_t n = dirs.size();

  auto build = [&](const std::vector<std::size_t>& lv) {
    const T r = reach * T(4);
    planar::Poly<T> box{{-r, -r}, {r, -r}, {r, r}, {-r, r}};
    for (std::size_t i = 0; i < n && !box.empty(); ++i) box = planar::clip(box, {dirs[i], out.ladders[i][lv[i]]});
    return box;
  };
  auto tick = [&] {
    if (++out.checks > opt.budget)
      throw BudgetExceeded("minimal oracle exceeded its budget of " + std::to_string(opt.budget) + " checks");
  };
  // Definitional check, used to confirm every candidate independently of the descent.
  auto ok = [&](const std::vector<std::size_t>& lv) {
    tick();
    auto z = build(lv);
    return !z.empty() && planar::contains_all(planar::minkowski(py, z), px);
  };

  std::vector<std::vector<std::size_t>> orders;
  std::vector<std::size_t> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = i;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> o(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
      o[i] = (s + i) % n;
      r[i] = (s + n - i) % n;
    }
    orders.push_back(o);
    orders.push_back(r);
  }
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.orders; ++k) {
    auto o = base;
    for (std::size_t i = n; i > 1; --i)
      std::swap(o[i - 1], o[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(i) - 1))]);
    orders.push_back(o);
  }

  // Z is feasible iff it meets every region v - Y. While lowering level i with
  // the others fixed, the lowest feasible level is max_v min{p_i.w : w in W_v},
  // W_v being v - Y clipped by the current system.
  const auto neg_y = negate(c.subtrahend()).planar();
  std::vector<planar::Poly<T>> regions;
  for (const auto& v : px) regions.push_back(planar::translate(neg_y, v));

  std::vector<std::vector<std::size_t>> seen;
  for (const auto& order : orders) {
    std::vector<std::size_t> lv(n);
    for (std::size_t i = 0; i < n; ++i) lv[i] = out.ladders[i].size() - 1;
    auto hit = regions;
    for (std::size_t i : order) {
      tick();
      const planar::P2<T> neg{-dirs[i].x, -dirs[i].y};
      T need = -planar::support(hit[0], neg);
      for (const auto& w : hit) {
        T lo = -planar::support(w, neg);
        if (lo > need) need = lo;
      }
      const auto& rungs = out.ladders[i];
      std::size_t r = 0;
      while (rungs[r] < need) ++r;
      lv[i] = r;
      for (auto& w : hit) w = planar::clip(w, {dirs[i], rungs[r]});
    }
    if (std::find(seen.begin(), seen.end(), lv) != seen.end()) continue;
    seen.push_back(lv);
    if (!ok(lv)) throw Error("minimal oracle produced an infeasible candidate");
    bool single_step_minimal = true;
    for (std::size_t i = 0; i < n && single_step_minimal; ++i) {
      if (lv[i] == 0) continue;
      auto trial = lv;
      --trial[i];
      if (ok(trial)) single_step_minimal = false;
    }
    if (!single_step_minimal) continue;
    auto z = Polytope<T>::from_planar(build(lv));
    if (std::find(out.candidates.begin(), out.candidates.end(), z) == out.candidates.end()) out.candidates.push_back(z);
  }
  return out;
}

}  // namespace convexdiff
