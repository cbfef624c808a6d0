#include <catch_amalgamated.hpp>

#include "convexdiff/collection.hpp"
#include "convexdiff/random.hpp"

using namespace convexdiff;
using Q = Rational;
using V = Vec<Q>;
using P = Polytope<Q>;
using C = Collection<Q>;

namespace {

Q q(long long a, long long b = 1) { return Q(a) / Q(b); }

P box(Q x0, Q x1, Q y0, Q y1) { return P::hull({V{x0, y0}, V{x1, y0}, V{x1, y1}, V{x0, y1}}); }

P fig1_triangle() { return P::hull({V{q(0), q(0)}, V{q(1), q(0)}, V{q(1, 2), q(1)}}); }
P fig1_base() { return P::hull({V{q(0), q(0)}, V{q(1), q(0)}}); }

}  // namespace

TEST_CASE("support of a collection") {
  Rng rng(1);
  auto dirs = direction_circle<Q>(16);
  for (int i = 0; i < 20; ++i) {
    auto x = random_shape<Q>(rng);
    for (const auto& p : dirs) {
      REQUIRE(support(C::of_set(x), p) == support_value(x, p));
      REQUIRE(support(make(x, x), p) == 0);
    }
  }
  REQUIRE(support(make(fig1_triangle(), fig1_base()), V{q(0), q(1)}) == 1);
  REQUIRE_THROWS_AS(make(fig1_triangle(), P::point(V{q(0)})), DimensionMismatch);
}

TEST_CASE("support is not convex in general") {
  // The fig-1 pair: (X)_p - (Y)_p at (1,0), (-1,0) and their midpoint 0.
  auto c = make(fig1_triangle(), fig1_base());
  Q a = support(c, V{q(1), q(1)}), b = support(c, V{q(-1), q(1)}), mid = support(c, V{q(0), q(2)});
  REQUIRE(mid > a + b);
}

TEST_CASE("addition") {
  Rng rng(2);
  auto dirs = direction_circle<Q>(32);
  for (int i = 0; i < 30; ++i) {
    auto x = random_shape<Q>(rng), y = random_shape<Q>(rng), z = random_shape<Q>(rng), w = random_shape<Q>(rng);
    auto c1 = make(x, y), c2 = make(z, w);
    REQUIRE(is_equivalent(add(c1, C::zero(2)), c1));
    REQUIRE(is_zero(add(c1, make(y, x))));
    REQUIRE(is_zero(add(c1, inverse(c1))));
    auto sum = add(c1, c2);
    for (const auto& p : dirs) REQUIRE(support(sum, p) == support(c1, p) + support(c2, p));
    REQUIRE(is_equivalent(add(C::of_set(x), z), C::of_set(minkowski_sum(x, z))));
    REQUIRE(add(C::of_set(x), z).minuend() == minkowski_sum(x, z));
  }
}

TEST_CASE("scaling") {
  Rng rng(3);
  auto dirs = direction_circle<Q>(16);
  const Q alphas[] = {q(-2), q(-1), q(-1, 3), q(0), q(1, 2), q(1), q(3)};
  for (int i = 0; i < 20; ++i) {
    auto x = random_shape<Q>(rng), y = random_shape<Q>(rng);
    auto c = make(x, y);
    REQUIRE(scale(C::of_set(x), q(-1)).minuend() == negate(x));
    REQUIRE(is_equivalent(scale(c, q(1)), c));
    REQUIRE(is_zero(scale(c, q(0))));
    for (const auto& a : alphas)
      for (const auto& p : dirs) REQUIRE(support(scale(c, a), p) == support(c, Vec<Q>(a * p)));
  }
}

TEST_CASE("Radstrom equivalence") {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    auto x = random_shape<Q>(rng), y = random_shape<Q>(rng), z = random_shape<Q>(rng);
    REQUIRE(is_equivalent(make(x, y), make(minkowski_sum(x, z), minkowski_sum(y, z))));
    REQUIRE(is_equivalent(make(scale(x, q(2)), x), C::of_set(x)));
  }
  auto seg = P::hull({V{q(-1)}, V{q(1)}});
  REQUIRE_FALSE(is_equivalent(make(seg, P::origin(1)), make(P::origin(1), seg)));
}

TEST_CASE("zero test") {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    auto x = random_shape<Q>(rng);
    REQUIRE(is_zero(make(x, x)));
    auto y = random_shape<Q>(rng);
    REQUIRE(is_zero(make(x, y)) == (x == y));
  }
  Q e = Q(1) - Q(1) / Q(1000000000);
  REQUIRE_FALSE(is_zero(make(box(q(0), q(1), q(0), q(1)), box(q(0), e, q(0), e))));
}

TEST_CASE("linear space laws") {
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    auto a = make(random_shape<Q>(rng), random_shape<Q>(rng));
    auto b = make(random_shape<Q>(rng), random_shape<Q>(rng));
    auto c = make(random_shape<Q>(rng), random_shape<Q>(rng));
    REQUIRE(is_equivalent(add(a, b), add(b, a)));
    REQUIRE(is_equivalent(add(add(a, b), c), add(a, add(b, c))));
    for (const Q& al : {q(-3, 2), q(0), q(2)})
      REQUIRE(is_equivalent(scale(add(a, b), al), add(scale(a, al), scale(b, al))));
  }
}

TEST_CASE("feasibility") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    auto x = random_shape<Q>(rng), y = random_shape<Q>(rng);
    auto c = make(x, y);
    REQUIRE(feasible(trivial_element(c), c));
    REQUIRE(feasible(P::origin(2), c) == contains_set(x, y));
    for (const Q& g : {q(0), q(1, 4), q(1, 2), q(3, 4), q(1)}) {
      auto cg = make(x, scale(x, g));
      REQUIRE(feasible(scale(x, Q(1 - g)), cg));
    }
  }
}
