#pragma once

// The formal difference X ÷ Y, stored as the ordered pair (X, Y). The
// collection of minimal Z with X in Y + Z is never materialized; its support
// function is (X)_p - (Y)_p and its minimal elements are extracted on demand.

#include "convexdiff/polytope.hpp"

namespace convexdiff {

template <class T>
class Collection {
 public:
  Collection(Polytope<T> x, Polytope<T> y) : x_(std::move(x)), y_(std::move(y)) { require_same_dim(x_.dim(), y_.dim()); }

  // X ÷ 0.
  static Collection of_set(Polytope<T> x) {
    auto d = x.dim();
    return Collection(std::move(x), Polytope<T>::origin(d));
  }
  static Collection zero(std::size_t d) { return Collection(Polytope<T>::origin(d), Polytope<T>::origin(d)); }

  const Polytope<T>& minuend() const { return x_; }
  const Polytope<T>& subtrahend() const { return y_; }
  std::size_t dim() const { return x_.dim(); }

 private:
  Polytope<T> x_, y_;
};

template <class T>
Collection<T> make(Polytope<T> x, Polytope<T> y) {
  return Collection<T>(std::move(x), std::move(y));
}

template <class T>
T support(const Collection<T>& c, const Vec<T>& p) {
  return support_value(c.minuend(), p) - support_value(c.subtrahend(), p);
}

template <class T>
Collection<T> add(const Collection<T>& a, const Collection<T>& b) {
  return Collection<T>(minkowski_sum(a.minuend(), b.minuend()), minkowski_sum(a.subtrahend(), b.subtrahend()));
}

// (X ÷ Y) + Z = (X + Z) ÷ Y
template <class T>
Collection<T> add(const Collection<T>& a, const Polytope<T>& z) {
  return Collection<T>(minkowski_sum(a.minuend(), z), a.subtrahend());
}

template <class T>
Collection<T> scale(const Collection<T>& c, const T& alpha) {
  return Collection<T>(scale(c.minuend(), alpha), scale(c.subtrahend(), alpha));
}

template <class T>
Collection<T> inverse(const Collection<T>& c) {
  return Collection<T>(c.subtrahend(), c.minuend());
}

// X ÷ Y ~ Z ÷ W iff X + W = Z + Y.
template <class T>
bool is_equivalent(const Collection<T>& a, const Collection<T>& b) {
  require_same_dim(a.dim(), b.dim());
  return minkowski_sum(a.minuend(), b.subtrahend()) == minkowski_sum(b.minuend(), a.subtrahend());
}

template <class T>
bool is_zero(const Collection<T>& c) {
  return c.minuend() == c.subtrahend();
}

// X in Y + Z.
template <class T>
bool feasible(const Polytope<T>& z, const Collection<T>& c) {
  require_same_dim(z.dim(), c.dim());
  return contains_set(c.minuend(), minkowski_sum(c.subtrahend(), z));
}

// X + (-Y): feasible, and contains every minimal element.
template <class T>
Polytope<T> trivial_element(const Collection<T>& c) {
  return minkowski_sum(c.minuend(), negate(c.subtrahend()));
}

}  // namespace convexdiff
