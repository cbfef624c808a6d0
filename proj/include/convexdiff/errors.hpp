#pragma once

#include <stdexcept>
#include <string>

namespace convexdiff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t a, std::size_t b)
      : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class UnsupportedDimension : public Error {
 public:
  UnsupportedDimension(std::size_t d, const std::string& what)
      : Error(what + " is not supported in dimension " + std::to_string(d)) {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Raised when an iterative or enumerative routine runs out of its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch(a, b);
}

}  // namespace convexdiff
