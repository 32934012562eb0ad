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

#ifndef BOXSEARCH_FINITE_GAME_HPP_
#define BOXSEARCH_FINITE_GAME_HPP_

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "boxsearch/error.hpp"
#include "boxsearch/evaluate.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/matrix_game.hpp"
#include "boxsearch/multi_target.hpp"
#include "boxsearch/solution.hpp"

namespace boxsearch {

// Perfect-detection games written out as a matrix game: rows are the
// Hider's k-subsets, columns the Searcher's permutations, entries the time
// until every hidden target is found. Independent of the closed forms.
struct FiniteGameSolution {
  Rational value;
  std::vector<std::pair<Subset, Rational>> hider;
  std::vector<std::pair<std::vector<size_t>, Rational>> searcher;  // support only

  // Single-target view; requires k = 1.
  SolveResult AsSolveResult(size_t n) const {
    SolveResult r;
    r.value = value;
    r.hider.probs.assign(n, Rational(0));
    for (const auto& [h, p] : hider) {
      if (h.size() != 1) throw UnsupportedGame("single-target view of a multi-target game");
      r.hider.probs[h.front()] = p;
    }
    for (const auto& [order, w] : searcher) r.searcher.atoms.push_back({Finite(order), w});
    return r;
  }
};

inline constexpr size_t kMaxFiniteGameBoxes = 7;

inline FiniteGameSolution LpSolveFinite(const GameSpec& game) {
  RequireValid(game);
  if (!game.perfect_detection()) throw UnsupportedGame("finite game oracle needs q=1 in every box");
  const size_t n = game.size();
  if (n > kMaxFiniteGameBoxes) throw LimitExceeded("finite game oracle is limited to n <= 7");
  const auto k = static_cast<size_t>(game.num_targets);

  std::vector<Subset> subsets;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    Subset h;
    for (size_t j = 0; j < n; ++j) {
      if (mask[j]) h.push_back(j);
    }
    subsets.push_back(std::move(h));
  } while (std::prev_permutation(mask.begin(), mask.end()));

  std::vector<std::vector<size_t>> perms;
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  do perms.push_back(order);
  while (std::next_permutation(order.begin(), order.end()));

  std::vector<std::vector<Rational>> payoff(subsets.size(), std::vector<Rational>(perms.size()));
  for (size_t i = 0; i < subsets.size(); ++i) {
    std::vector<bool> in(n, false);
    for (size_t j : subsets[i]) in[j] = true;
    for (size_t c = 0; c < perms.size(); ++c) {
      Rational t = 0;
      size_t left = k;
      for (size_t b : perms[c]) {
        t += game.time(b);
        if (in[b] && --left == 0) break;
      }
      payoff[i][c] = t;
    }
  }

  const MatrixGameSolution m = SolveMatrixGame(payoff);
  FiniteGameSolution out;
  out.value = m.value;
  for (size_t i = 0; i < subsets.size(); ++i) out.hider.emplace_back(subsets[i], m.row_strategy[i]);
  for (size_t c = 0; c < perms.size(); ++c) {
    if (m.col_strategy[c] != 0) out.searcher.emplace_back(perms[c], m.col_strategy[c]);
  }
  return out;
}

}  // namespace boxsearch

#endif  // BOXSEARCH_FINITE_GAME_HPP_
