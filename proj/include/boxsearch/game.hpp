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

#ifndef BOXSEARCH_GAME_HPP_
#define BOXSEARCH_GAME_HPP_

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "boxsearch/error.hpp"
#include "boxsearch/rational.hpp"

namespace boxsearch {

struct BoxSpec {
  Rational search_time;     // t_j > 0
  Rational detection_prob;  // q_j in (0, 1]

  friend bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

// A search game: n boxes and the number of targets the Hider places
// (at most one per box). Box indices are 0-based in code and 1-based in
// every text format.
struct GameSpec {
  std::vector<BoxSpec> boxes;
  int num_targets = 1;

  size_t size() const { return boxes.size(); }
  const Rational& time(size_t j) const { return boxes[j].search_time; }
  const Rational& detection(size_t j) const { return boxes[j].detection_prob; }
  Rational miss(size_t j) const { return 1 - boxes[j].detection_prob; }

  Rational total_time() const {
    Rational s = 0;
    for (const auto& b : boxes) s += b.search_time;
    return s;
  }
  bool perfect_detection() const {
    for (const auto& b : boxes) {
      if (b.detection_prob != 1) return false;
    }
    return true;
  }
  bool equal_detection() const {
    for (const auto& b : boxes) {
      if (b.detection_prob != boxes.front().detection_prob) return false;
    }
    return true;
  }

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

inline GameSpec MakeGame(const std::vector<Rational>& times, const std::vector<Rational>& probs,
                         int targets = 1) {
  if (times.size() != probs.size()) {
    throw Error("MakeGame: times and probabilities differ in length");
  }
  GameSpec g;
  g.num_targets = targets;
  for (size_t j = 0; j < times.size(); ++j) g.boxes.push_back({times[j], probs[j]});
  return g;
}

// Lists every invariant violation; empty means valid.
inline std::vector<std::string> Validate(const GameSpec& game) {
  std::vector<std::string> errors;
  const size_t n = game.size();
  if (n == 0) errors.push_back("game must have at least one box");
  for (size_t j = 0; j < n; ++j) {
    const auto& b = game.boxes[j];
    const std::string tag = "box " + std::to_string(j + 1) + ": ";
    if (b.search_time <= 0) errors.push_back(tag + "search_time must be positive");
    if (b.detection_prob <= 0 || b.detection_prob > 1) {
      errors.push_back(tag + "detection_prob must lie in (0,1]");
    }
  }
  if (game.num_targets < 1 || static_cast<size_t>(game.num_targets) > n) {
    errors.push_back("targets must satisfy 1 <= k <= n");
  } else if (game.num_targets > 1 && !game.perfect_detection()) {
    errors.push_back("multi-target games require q=1 in every box");
  }
  return errors;
}

inline void RequireValid(const GameSpec& game) {
  auto errors = Validate(game);
  if (!errors.empty()) throw ValidationError(std::move(errors));
}

// Coprime exponents s_j with (1 - q_j)^{s_j} equal to a common miss
// probability for every imperfect box. Perfect boxes carry exponent 1 and
// take no part in the equality.
struct Alignment {
  std::vector<long> exponents;
  Rational common_miss;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

namespace internal {

inline double Log(const Rational& x) {
  long en = 0, ed = 0;
  double n = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double d = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(n) - std::log(d) + static_cast<double>(en - ed) * std::log(2.0);
}

// Smallest (a, b) with x^a == y^b and 1 <= a, b <= bound, or nullopt.
// Both arguments lie strictly in (0, 1). The log ratio pins b to within one
// of an integer, so each a costs at most two exact power comparisons.
inline std::optional<std::pair<long, long>> MinimalPowerPair(const Rational& x, const Rational& y,
                                                             long bound) {
  const double ratio = Log(x) / Log(y);
  for (long a = 1; a <= bound; ++a) {
    const double b_est = ratio * static_cast<double>(a);
    for (long b : {static_cast<long>(std::floor(b_est)), static_cast<long>(std::ceil(b_est))}) {
      if (b < 1 || b > bound) continue;
      if (Pow(x, a) == Pow(y, b)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

}  // namespace internal

// Minimal-exponent alignment with every s_j <= exponent_bound, or nullopt.
// A game with no imperfect box has nothing to align and returns nullopt.
inline std::optional<Alignment> DetectAlignment(const GameSpec& game, long exponent_bound = 64) {
  const size_t n = game.size();
  std::vector<size_t> imperfect;
  for (size_t j = 0; j < n; ++j) {
    if (game.detection(j) < 1) imperfect.push_back(j);
  }
  if (imperfect.empty() || exponent_bound < 1) return std::nullopt;

  // Pair every imperfect box with the first one: x0^{a_j} = xj^{b_j} with
  // (a_j, b_j) primitive. Then s_0 = lcm(a_j) and s_j = s_0 * b_j / a_j.
  const Rational x0 = game.miss(imperfect.front());
  std::vector<std::pair<long, long>> pairs;
  long s0 = 1;
  for (size_t idx = 1; idx < imperfect.size(); ++idx) {
    auto p = internal::MinimalPowerPair(x0, game.miss(imperfect[idx]), exponent_bound);
    if (!p) return std::nullopt;
    pairs.push_back(*p);
    s0 = std::lcm(s0, p->first);
    if (s0 > exponent_bound) return std::nullopt;
  }

  Alignment out;
  out.exponents.assign(n, 1);
  out.exponents[imperfect.front()] = s0;
  for (size_t idx = 1; idx < imperfect.size(); ++idx) {
    const auto [a, b] = pairs[idx - 1];
    const long s = s0 / a * b;
    if (s > exponent_bound) return std::nullopt;
    out.exponents[imperfect[idx]] = s;
  }
  out.common_miss = Pow(x0, s0);
  return out;
}

}  // namespace boxsearch

#endif  // BOXSEARCH_GAME_HPP_
