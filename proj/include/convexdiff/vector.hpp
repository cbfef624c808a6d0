#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "convexdiff/errors.hpp"
#include "convexdiff/scalar.hpp"

namespace convexdiff {

// Point or direction in E = R^d.
template <class T>
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim) : c_(dim, T(0)) {}
  Vec(std::initializer_list<T> init) : c_(init) {}
  explicit Vec(std::vector<T> coords) : c_(std::move(coords)) {}

  std::size_t dim() const { return c_.size(); }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const std::vector<T>& coords() const { return c_; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& v) { return sgn(v) == 0; });
  }

  Vec& operator+=(const Vec& o) {
    require_same_dim(dim(), o.dim());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    require_same_dim(dim(), o.dim());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, const T& s) { return a *= s; }
  friend Vec operator*(const T& s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }

  // Tolerance-aware equality (exact for rationals).
  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (cmp(a.c_[i], b.c_[i]) != 0) return false;
    return true;
  }

  // Lexicographic order consistent with operator==.
  friend bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
      int c = cmp(a.c_[i], b.c_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

  friend std::ostream& operator<<(std::ostream& os, const Vec& v) {
    os << '(';
    for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << Num<T>::format(v.c_[i]);
    return os << ')';
  }

 private:
  std::vector<T> c_;
};

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  require_same_dim(a.dim(), b.dim());
  T s(0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T norm_sq(const Vec<T>& a) {
  return dot(a, a);
}

template <class T>
double norm(const Vec<T>& a) {
  return std::sqrt(to_double(norm_sq(a)));
}

template <class T>
Vec<T> unit_axis(std::size_t dim, std::size_t axis, int sign = 1) {
  Vec<T> v(dim);
  v[axis] = T(sign);
  return v;
}

template <class T, class U>
Vec<T> convert(const Vec<U>& v) {
  std::vector<T> out;
  out.reserve(v.dim());
  for (const auto& c : v) {
    if constexpr (std::is_same_v<T, U>)
      out.push_back(c);
    else if constexpr (std::is_same_v<T, double>)
      out.push_back(to_double(c));
    else
      out.push_back(Num<T>::from_double(to_double(c)));
  }
  return Vec<T>(std::move(out));
}

}  // namespace convexdiff
