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

#ifndef BOXSEARCH_CLOSED_FORM_HPP_
#define BOXSEARCH_CLOSED_FORM_HPP_

#include <algorithm>
#include <vector>

#include "boxsearch/error.hpp"
#include "boxsearch/evaluate.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/solution.hpp"

namespace boxsearch {

// p*_j proportional to t_j / q_j: every first-look index is equal.
inline HiderStrategy EqualizingHider(const GameSpec& game) {
  RequireValid(game);
  std::vector<Rational> w;
  w.reserve(game.size());
  for (size_t j = 0; j < game.size(); ++j) w.push_back(game.time(j) / game.detection(j));
  return Normalized(std::move(w));
}

// Boxes start, start+1, ..., n-1, 0, ..., start-1.
inline std::vector<size_t> RotationOrder(size_t n, size_t start) {
  std::vector<size_t> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = (start + i) % n;
  return out;
}

enum class RotationVariant {
  kFixed,     // one rotation drawn up front and cycled forever
  kPerRound,  // a fresh rotation drawn at the start of each round
};

namespace internal {

inline MixedSearcher RotationMixture(const std::vector<Rational>& weights, bool perfect) {
  MixedSearcher theta;
  for (size_t i = 0; i < weights.size(); ++i) {
    auto order = RotationOrder(weights.size(), i);
    theta.atoms.push_back(
        {perfect ? Finite(std::move(order)) : Cyclic(std::move(order)), weights[i]});
  }
  return theta;
}

}  // namespace internal

// Unit times and a common detection probability q for all n boxes.
inline SolveResult SolveEqualTimesProbs(size_t n, const Rational& q,
                                        RotationVariant variant = RotationVariant::kFixed) {
  if (n < 1) throw ValidationError({"need at least one box"});
  if (q <= 0 || q > 1) throw ValidationError({"detection_prob must lie in (0,1]"});
  const Rational nn(static_cast<long>(n));
  SolveResult res;
  res.value = nn / q - (nn - 1) / 2;
  res.hider = Uniform(n);
  res.searcher = internal::RotationMixture(std::vector<Rational>(n, Rational(1) / nn), q == 1);
  res.per_round = variant == RotationVariant::kPerRound;
  return res;
}

// Common detection probability q, arbitrary times:
//   v_q = (1-q) t(B) / q + (t2(B) + t(B)^2) / (2 t(B)),
// Hider equalizing, Searcher cycling rotation s_j with probability t_j/t(B).
inline SolveResult SolveEqualProbs(const GameSpec& game,
                                   RotationVariant variant = RotationVariant::kFixed) {
  RequireValid(game);
  if (game.num_targets != 1) throw UnsupportedGame("closed form covers a single target only");
  if (!game.equal_detection()) throw UnsupportedGame("detection probabilities are not all equal");
  const Rational q = game.detection(0);
  const Rational total = game.total_time();
  Rational squares = 0;
  for (const auto& b : game.boxes) squares += b.search_time * b.search_time;

  SolveResult res;
  res.value = (1 - q) * total / q + (squares + total * total) / (2 * total);
  res.hider = EqualizingHider(game);
  std::vector<Rational> w;
  for (const auto& b : game.boxes) w.push_back(b.search_time / total);
  res.searcher = internal::RotationMixture(w, q == 1);
  res.per_round = variant == RotationVariant::kPerRound;
  return res;
}

// u(j, theta) when theta redraws rotation s_i (weight w_i) every round.
// Each round searches every box once, so the round in which the target is
// found is geometric and independent of the rotations drawn.
inline Rational PerRoundPayoff(const GameSpec& game, const MixedSearcher& rotations, size_t box) {
  if (!game.equal_detection()) throw UnsupportedGame("per-round rotations need a common q");
  CheckSearcher(rotations, game.size());
  Rational within = 0;
  for (const auto& a : rotations.atoms) {
    const auto& order = a.seq.cycle.empty() ? a.seq.prefix : a.seq.cycle;
    std::vector<size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    bool perm = !(!a.seq.prefix.empty() && !a.seq.cycle.empty()) && sorted.size() == game.size();
    for (size_t i = 0; perm && i < sorted.size(); ++i) perm = sorted[i] == i;
    if (!perm) throw ValidationError({"per-round atoms must be single rounds over all boxes"});
    Rational t = 0;
    for (size_t b : order) {
      t += game.time(b);
      if (b == box) break;
    }
    within += a.weight * t;
  }
  const Rational q = game.detection(0);
  return (1 - q) / q * game.total_time() + within;
}

}  // namespace boxsearch

#endif  // BOXSEARCH_CLOSED_FORM_HPP_
