// Copyright 2026 The boxsearch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOXSEARCH_MATRIX_GAME_HPP_
#define BOXSEARCH_MATRIX_GAME_HPP_

#include <algorithm>
#include <vector>

#include "boxsearch/error.hpp"
#include "boxsearch/rational.hpp"

namespace boxsearch {

struct MatrixGameSolution {
  Rational value;
  std::vector<Rational> row_strategy;  // maximizer
  std::vector<Rational> col_strategy;  // minimizer
};

namespace internal {

// Solves max 1'z s.t. A z <= 1, z >= 0 for an integer matrix A with
// positive entries, by integer (fraction-free) pivoting on the full
// tableau. Every entry stays an integer; the common denominator is the
// last pivot. Bland's rule on both choices rules out cycling.
class IntegerSimplex {
 public:
  explicit IntegerSimplex(const std::vector<std::vector<Integer>>& a)
      : rows_(a.size()), vars_(a.front().size()) {
    cols_ = vars_ + rows_ + 1;
    tab_.assign(rows_ + 1, std::vector<Integer>(cols_, Integer(0)));
    for (size_t j = 0; j < vars_; ++j) tab_[0][j] = -1;
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < vars_; ++j) tab_[i + 1][j] = a[i][j];
      tab_[i + 1][vars_ + i] = 1;
      tab_[i + 1][cols_ - 1] = 1;
    }
    basis_.resize(rows_);
    for (size_t i = 0; i < rows_; ++i) basis_[i] = vars_ + i;
    det_ = 1;
  }

  void Solve() {
    while (true) {
      size_t enter = cols_;
      for (size_t j = 0; j + 1 < cols_; ++j) {
        if (sgn(tab_[0][j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return;

      size_t leave = rows_;
      for (size_t i = 0; i < rows_; ++i) {
        const Integer& coef = tab_[i + 1][enter];
        if (sgn(coef) <= 0) continue;
        if (leave == rows_) {
          leave = i;
          continue;
        }
        // rhs_i / coef_i vs rhs_l / coef_l, all denominators positive.
        const int cmp = cmp_ratio(i, leave, enter);
        if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == rows_) throw Error("matrix game LP is unbounded");
      Pivot(leave + 1, enter);
      basis_[leave] = enter;
    }
  }

  Rational objective() const { return Rational(tab_[0][cols_ - 1]) / Rational(det_); }

  std::vector<Rational> primal() const {
    std::vector<Rational> z(vars_, Rational(0));
    for (size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < vars_) z[basis_[i]] = Rational(tab_[i + 1][cols_ - 1]) / Rational(det_);
    }
    for (auto& x : z) x.canonicalize();
    return z;
  }

  std::vector<Rational> dual() const {
    std::vector<Rational> y(rows_);
    for (size_t i = 0; i < rows_; ++i) {
      y[i] = Rational(tab_[0][vars_ + i]) / Rational(det_);
      y[i].canonicalize();
    }
    return y;
  }

 private:
  int cmp_ratio(size_t i, size_t l, size_t col) const {
    const Integer lhs = tab_[i + 1][cols_ - 1] * tab_[l + 1][col];
    const Integer rhs = tab_[l + 1][cols_ - 1] * tab_[i + 1][col];
    return cmp(lhs, rhs);
  }

  void Pivot(size_t r, size_t s) {
    const Integer p = tab_[r][s];
    Integer t;
    for (size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const Integer f = tab_[i][s];
      for (size_t j = 0; j < cols_; ++j) {
        // (M_ij p - M_is M_rj) / det, exact by Sylvester's identity.
        t = tab_[i][j] * p;
        if (sgn(f) != 0 && sgn(tab_[r][j]) != 0) t -= f * tab_[r][j];
        mpz_divexact(tab_[i][j].get_mpz_t(), t.get_mpz_t(), det_.get_mpz_t());
      }
    }
    det_ = p;
  }

  size_t rows_, vars_, cols_;
  std::vector<std::vector<Integer>> tab_;
  std::vector<size_t> basis_;
  Integer det_;
};

}  // namespace internal

// Value and optimal mixed strategies of a finite zero-sum matrix game;
// entry (i, j) is what the column player pays the row player.
inline MatrixGameSolution SolveMatrixGame(const std::vector<std::vector<Rational>>& payoff) {
  if (payoff.empty() || payoff.front().empty()) throw ValidationError({"empty payoff matrix"});
  const size_t rows = payoff.size(), cols = payoff.front().size();
  Rational lo = payoff[0][0];
  Integer scale = 1;
  for (const auto& row : payoff) {
    if (row.size() != cols) throw ValidationError({"ragged payoff matrix"});
    for (const auto& x : row) {
      lo = std::min(lo, x);
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
    }
  }
  // Shift so every entry is at least 1, then clear denominators.
  const Rational shift = lo < 1 ? Rational(1 - lo) : Rational(0);
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) {
      Rational v = (payoff[i][j] + shift) * scale;
      v.canonicalize();
      a[i][j] = v.get_num();
    }
  }
  internal::IntegerSimplex lp(a);
  lp.Solve();
  const Rational total = lp.objective();  // 1 / (scaled value)

  MatrixGameSolution out;
  out.value = Rational(1) / total / Rational(scale) - shift;
  out.value.canonicalize();
  for (auto& z : lp.primal()) out.col_strategy.push_back(z / total);
  for (auto& y : lp.dual()) out.row_strategy.push_back(y / total);
  return out;
}

}  // namespace boxsearch

#endif  // BOXSEARCH_MATRIX_GAME_HPP_
