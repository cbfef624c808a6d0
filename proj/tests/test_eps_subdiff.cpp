#include <catch_amalgamated.hpp>

#include "convexdiff/eps_subdiff.hpp"

using namespace convexdiff;
using Q = Rational;
using V = Vec<Q>;
using P = Polytope<Q>;
using F = PWLConvexFunction<Q>;

namespace {

Q q(long long a, long long b = 1) { return Q(a) / Q(b); }

F abs_fn() { return F({{V{q(1)}, q(0)}, {V{q(-1)}, q(0)}}); }

P interval(Q a, Q b) { return P::hull({V{a}, V{b}}); }

// Outward probe points around a vertex g of D: away from the vertex mean, or along the axes for a point.
std::vector<V> outward_probes(const P& d, const V& g, const Q& step) {
  V c(d.dim());
  for (const auto& v : d.vertices()) c += v;
  c *= Q(1) / Q(static_cast<long long>(d.size()));
  std::vector<V> out;
  if (d.size() == 1) {
    for (std::size_t i = 0; i < d.dim(); ++i) {
      out.push_back(g + unit_axis<Q>(d.dim(), i) * step);
      out.push_back(g - unit_axis<Q>(d.dim(), i) * step);
    }
  } else {
    V dir = g - c;
    out.push_back(g + dir * Q(step / Q(std::sqrt(to_double(norm_sq(dir))) + 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("evaluation") {
  auto f = abs_fn();
  auto e = eval(f, V{q(1)});
  REQUIRE(e.value == 1);
  REQUIRE(e.active == std::vector<std::size_t>{0});
  auto z = eval(f, V{q(0)});
  REQUIRE(z.value == 0);
  REQUIRE(z.active == std::vector<std::size_t>{0, 1});
  F one({{V{q(2), q(3)}, q(1)}});
  auto o = eval(one, V{q(1), q(1)});
  REQUIRE(o.value == 6);
  REQUIRE(o.active == std::vector<std::size_t>{0});
  REQUIRE_THROWS_AS(eval(f, V{q(1), q(1)}), DimensionMismatch);
}

TEST_CASE("construction checks and deduplication") {
  REQUIRE_THROWS_AS(F({}), InvalidArgument);
  REQUIRE_THROWS_AS(F({{V{q(1)}, q(0)}, {V{q(1), q(0)}, q(0)}}), DimensionMismatch);
  F f({{V{q(1)}, q(0)}, {V{q(1)}, q(0)}, {V{q(-1)}, q(0)}});
  REQUIRE(f.pieces().size() == 2);
}

TEST_CASE("absolute value: closed form on [0, 3]") {
  auto f = abs_fn();
  REQUIRE(eps_subdiff(f, V{q(1)}, q(0)) == P::point(V{q(1)}));
  REQUIRE(eps_subdiff(f, V{q(0)}, q(0)) == interval(q(-1), q(1)));
  REQUIRE(eps_subdiff(f, V{q(1)}, q(1, 2)) == interval(q(1, 2), q(1)));
  for (int k = 0; k <= 30; ++k) {
    Q e = q(k, 10);
    Q lo = Q(1) - e < Q(-1) ? Q(-1) : Q(1 - e);
    REQUIRE(eps_subdiff(f, V{q(1)}, e) == interval(lo, q(1)));
  }
  REQUIRE_THROWS_AS(eps_subdiff(f, V{q(1)}, q(-1)), InvalidArgument);
}

TEST_CASE("definitional oracle confirms the absolute value endpoints") {
  auto f = abs_fn();
  const Q step = q(1, 1000);
  auto samples = oracle_samples(f, V{q(1)}, SamplingGrid{});
  for (const Q& e : {q(0), q(1, 2), q(1), q(2), q(3)}) {
    auto d = eps_subdiff(f, V{q(1)}, e);
    Q lo = d.vertices().front()[0], hi = d.vertices().back()[0];
    REQUIRE(eps_subdiff_oracle(f, V{q(1)}, e, V{lo}, samples));
    REQUIRE(eps_subdiff_oracle(f, V{q(1)}, e, V{hi}, samples));
    REQUIRE_FALSE(eps_subdiff_oracle(f, V{q(1)}, e, V{Q(lo - step)}, samples));
    REQUIRE_FALSE(eps_subdiff_oracle(f, V{q(1)}, e, V{Q(hi + step)}, samples));
    REQUIRE(eps_subdiff_oracle(f, V{q(1)}, Q(e + 1), V{lo}, samples));
  }
}

TEST_CASE("oracle agrees with the construction on random functions") {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 1 + i % 2;
    auto f = random_pwl<Q>(rng, d);
    V x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.grid_scalar<Q>(-8, 8, 4);
    Q e = rng.grid_scalar<Q>(0, 16, 4);
    SamplingGrid grid;
    grid.per_axis = d == 1 ? 101 : 41;
    auto samples = oracle_samples(f, x, grid);
    auto dset = eps_subdiff(f, x, e);
    for (const auto& g : dset.vertices()) {
      REQUIRE(eps_subdiff_oracle(f, x, e, g, samples));
      for (const auto& out : outward_probes(dset, g, q(1, 1000)))
        if (!contains_point(dset, out)) REQUIRE_FALSE(eps_subdiff_oracle(f, x, e, out, samples));
    }
  }
}

TEST_CASE("nesting and saturation") {
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    const std::size_t d = 1 + i % 2;
    auto f = random_pwl<Q>(rng, d);
    V x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.grid_scalar<Q>(-8, 8, 4);
    std::vector<V> grads;
    for (const auto& p : f.pieces()) grads.push_back(p.a);
    auto all = P::hull(grads);
    Q prev_e = q(0);
    auto prev = eps_subdiff(f, x, prev_e);
    for (int k = 1; k <= 8; ++k) {
      Q e = rng.grid_scalar<Q>(0, 8, 4) + prev_e;
      auto cur = eps_subdiff(f, x, e);
      REQUIRE(contains_set(prev, cur));
      REQUIRE(contains_set(cur, all));
      prev = cur;
      prev_e = e;
    }
    REQUIRE(eps_subdiff(f, x, max_gap(f, x)) == all);
    REQUIRE(eps_subdiff(f, x, Q(max_gap(f, x) + 1)) == all);
  }
}

TEST_CASE("graph convexity") {
  auto f = abs_fn();
  REQUIRE(graph_convexity_check(f, V{q(1)}, q(1, 2), q(1, 2), q(1, 3)));
  REQUIRE(graph_convexity_check(f, V{q(1)}, q(0), q(1), q(1, 2)));
  auto lhs = minkowski_sum(scale(eps_subdiff(f, V{q(1)}, q(0)), q(1, 2)), scale(eps_subdiff(f, V{q(1)}, q(1)), q(1, 2)));
  REQUIRE(lhs == interval(q(1, 2), q(1)));
  REQUIRE(eps_subdiff(f, V{q(1)}, q(1, 2)) == lhs);
  Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const std::size_t d = 1 + i % 2;
    auto g = random_pwl<Q>(rng, d);
    V x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.grid_scalar<Q>(-8, 8, 4);
    REQUIRE(graph_convexity_check(g, x, rng.grid_scalar<Q>(0, 20, 4), rng.grid_scalar<Q>(0, 20, 4),
                                  rng.grid_scalar<Q>(0, 8, 8)));
  }
  REQUIRE_THROWS_AS(graph_convexity_check(f, V{q(1)}, q(0), q(1), q(2)), InvalidArgument);
}

TEST_CASE("Lipschitz probe on the absolute value") {
  auto r = lipschitz_probe(abs_fn(), V{q(1)}, q(1), q(1, 2), 200, 7);
  REQUIRE(r.l_emp == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(r.l_bound == Catch::Approx(3.0).margin(1e-12));
  REQUIRE(r.violations == 0);
  REQUIRE(r.pairs + r.degenerate == 200);
  REQUIRE_THROWS_AS(lipschitz_probe(abs_fn(), V{q(1)}, q(1), q(1), 10, 1), InvalidArgument);
}

TEST_CASE("Lipschitz probe on random functions") {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const std::size_t d = 1 + i % 2;
    auto f = random_pwl<Q>(rng, d);
    V x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = rng.grid_scalar<Q>(-8, 8, 4);
    auto r = lipschitz_probe(f, x, q(1), q(1, 2), 50, 100 + i);
    REQUIRE(r.violations == 0);
    REQUIRE(r.l_emp <= r.l_bound + 1e-12);
  }
}
