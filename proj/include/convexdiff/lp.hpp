#pragma once

// Dense two-phase simplex with Bland's rule: minimize c.x subject to A x = b, x >= 0.
// Bland's rule guarantees termination, which matters more here than speed; the
// programs solved are tiny (a few dozen columns).

#include <optional>
#include <vector>

#include "convexdiff/scalar.hpp"

namespace convexdiff::lp {

enum class Status { optimal, infeasible, unbounded };

template <class T>
struct Result {
  Status status = Status::infeasible;
  T value{0};
  std::vector<T> x;
};

template <class T>
class Simplex {
 public:
  // rows: constraint coefficients (each of size n); rhs: right-hand sides.
  Simplex(std::vector<std::vector<T>> rows, std::vector<T> rhs, std::vector<T> cost)
      : m_(rows.size()), n_(cost.size()) {
    // Tableau columns: n structural, m artificial, then rhs.
    tab_.assign(m_ + 1, std::vector<T>(n_ + m_ + 1, T(0)));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      bool flip = rhs[i] < T(0);
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = flip ? T(-rows[i][j]) : rows[i][j];
      tab_[i][n_ + i] = T(1);
      tab_[i][n_ + m_] = flip ? T(-rhs[i]) : rhs[i];
      basis_[i] = n_ + i;
    }
    cost_ = std::move(cost);
  }

  Result<T> solve() {
    // Phase I: minimize the sum of artificials.
    std::vector<T> phase1(n_ + m_, T(0));
    for (std::size_t i = 0; i < m_; ++i) phase1[n_ + i] = T(1);
    set_objective(phase1);
    if (!run(n_ + m_)) return {Status::unbounded, T(0), {}};
    if (sgn(T(-tab_[m_][n_ + m_])) > 0) return {Status::infeasible, T(0), {}};
    drive_out_artificials();

    // Phase II on structural columns only.
    std::vector<T> phase2(n_ + m_, T(0));
    for (std::size_t j = 0; j < n_; ++j) phase2[j] = cost_[j];
    set_objective(phase2);
    if (!run(n_)) return {Status::unbounded, T(0), {}};

    Result<T> r;
    r.status = Status::optimal;
    r.x.assign(n_, T(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) r.x[basis_[i]] = tab_[i][n_ + m_];
    r.value = T(-tab_[m_][n_ + m_]);
    return r;
  }

 private:
  void set_objective(const std::vector<T>& c) {
    auto& obj = tab_[m_];
    for (std::size_t j = 0; j <= n_ + m_; ++j) obj[j] = j < c.size() ? c[j] : T(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const T& cb = c[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= n_ + m_; ++j) obj[j] -= cb * tab_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    T pv = tab_[r][c];
    for (auto& v : tab_[r]) v /= pv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || sgn(tab_[i][c]) == 0) continue;
      T f = tab_[i][c];
      for (std::size_t j = 0; j <= n_ + m_; ++j) tab_[i][j] -= f * tab_[r][j];
    }
    basis_[r] = c;
  }

  // Returns false if unbounded. Only columns < limit may enter.
  bool run(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (sgn(tab_[m_][j]) < 0) {
          enter = j;
          break;
        }
      if (enter == limit) return true;
      std::size_t leave = m_;
      T best{0};
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(tab_[i][enter]) <= 0) continue;
        T ratio = tab_[i][n_ + m_] / tab_[i][enter];
        if (leave == m_ || cmp(ratio, best) < 0 || (cmp(ratio, best) == 0 && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(tab_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      // A row with no structural entry is redundant; its artificial stays at zero.
    }
  }

  std::size_t m_, n_;
  std::vector<std::vector<T>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<T> cost_;
};

template <class T>
Result<T> minimize(std::vector<std::vector<T>> rows, std::vector<T> rhs, std::vector<T> cost) {
  return Simplex<T>(std::move(rows), std::move(rhs), std::move(cost)).solve();
}

template <class T>
bool feasible(std::vector<std::vector<T>> rows, std::vector<T> rhs) {
  std::size_t n = rows.empty() ? 0 : rows[0].size();
  return minimize<T>(std::move(rows), std::move(rhs), std::vector<T>(n, T(0))).status == Status::optimal;
}

}  // namespace convexdiff::lp
