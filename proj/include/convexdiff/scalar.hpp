#pragma once

// Scalar traits. Every geometric routine is templated on the scalar type and
// routes comparisons through Num<T>, so the same code runs exactly over GMP
// rationals or approximately over doubles with an absolute tolerance.

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "convexdiff/errors.hpp"

namespace convexdiff {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class Arithmetic { rational, floating };

inline std::string to_string(Arithmetic a) { return a == Arithmetic::rational ? "rational" : "double"; }

template <class T>
struct Num;

template <>
struct Num<Rational> {
  static constexpr bool exact = true;
  static constexpr Arithmetic mode = Arithmetic::rational;
  static Rational tolerance() { return Rational(0); }

  static int sign(const Rational& v) { return v.sign(); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }

  // Exact value of the shortest decimal that round-trips to `v`, so 0.1 maps to 1/10.
  static Rational from_double(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite coordinate");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
    return parse_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
  }

  // Accepts "p", "p/q", and decimal/scientific literals.
  static Rational parse(std::string_view s) {
    if (s.empty()) throw InvalidArgument("empty scalar literal");
    if (s.find('/') != std::string_view::npos) {
      auto slash = s.find('/');
      Rational num = parse_integer(s.substr(0, slash));
      Rational den = parse_integer(s.substr(slash + 1));
      if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(s) + "'");
      return num / den;
    }
    if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s);
    return parse_integer(s);
  }

  static std::string format(const Rational& v) { return v.str(); }

 private:
  static Rational parse_integer(std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw InvalidArgument("malformed integer '" + std::string(s) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') throw InvalidArgument("malformed integer '" + std::string(s) + "'");
    return Rational(std::string(s[0] == '+' ? s.substr(1) : s));
  }

  static Rational parse_decimal(std::string_view s) {
    std::string_view mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mant = s.substr(0, e);
      auto ex = s.substr(e + 1);
      if (!ex.empty() && ex[0] == '+') ex.remove_prefix(1);
      auto [p, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), exp10);
      if (ec != std::errc() || p != ex.data() + ex.size())
        throw InvalidArgument("malformed exponent in '" + std::string(s) + "'");
    }
    std::string digits;
    bool neg = false;
    std::size_t i = 0;
    if (i < mant.size() && (mant[i] == '-' || mant[i] == '+')) neg = mant[i++] == '-';
    bool seen_dot = false, any = false;
    for (; i < mant.size(); ++i) {
      char c = mant[i];
      if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        any = true;
        if (seen_dot) --exp10;
      } else {
        throw InvalidArgument("malformed decimal '" + std::string(s) + "'");
      }
    }
    if (!any) throw InvalidArgument("malformed decimal '" + std::string(s) + "'");
    Rational v(digits);
    Rational ten(10), scale(1);
    for (long k = 0; k < std::labs(exp10); ++k) scale *= ten;
    v = exp10 >= 0 ? v * scale : v / scale;
    return neg ? -v : v;
  }
};

template <>
struct Num<double> {
  static constexpr bool exact = false;
  static constexpr Arithmetic mode = Arithmetic::floating;
  static constexpr double tau = 1e-9;
  static double tolerance() { return tau; }

  static int sign(double v) { return v > tau ? 1 : (v < -tau ? -1 : 0); }
  static double to_double(double v) { return v; }
  static double from_double(double v) {
    if (!std::isfinite(v)) throw InvalidArgument("non-finite coordinate");
    return v;
  }
  static double parse(std::string_view s) {
    if (s.find('/') == std::string_view::npos && !s.empty() && s[0] != '+') {
      double v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec == std::errc() && p == s.data() + s.size()) return from_double(v);
    }
    return Num<Rational>::to_double(Num<Rational>::parse(s));
  }

  static std::string format(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }
};

template <class T>
int sgn(const T& v) {
  return Num<T>::sign(v);
}

template <class T>
int cmp(const T& a, const T& b) {
  return Num<T>::sign(a - b);
}

template <class T>
double to_double(const T& v) {
  return Num<T>::to_double(v);
}

template <class T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

template <class T>
T from_fraction(long long num, long long den) {
  return T(num) / T(den);
}

}  // namespace convexdiff
