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

#ifndef BOXSEARCH_BEST_RESPONSE_HPP_
#define BOXSEARCH_BEST_RESPONSE_HPP_

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <variant>
#include <vector>

#include "boxsearch/error.hpp"
#include "boxsearch/evaluate.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/sequence.hpp"

namespace boxsearch {

// How to choose among boxes whose indices tie at the maximum.
struct LowestIndex {};
struct PreferBox {
  size_t box;
};
// One extreme response per box (PreferBox for each), deduplicated.
struct AllExtremes {};
using TieBreakRule = std::variant<LowestIndex, PreferBox, AllExtremes>;

struct BestResponse {
  SearchSequence seq;
  // Set when no alignment exists and the greedy search was cut at the
  // horizon; seq.prefix is then only the first `horizon` looks.
  bool truncated = false;
};

struct BestResponseOptions {
  size_t horizon = 0;  // 0 selects the default
  long exponent_bound = 64;
};

namespace internal {

inline constexpr size_t kUnalignedHorizon = 10000;

struct GreedyState {
  std::vector<size_t> pool;  // boxes with positive probability
  std::vector<Rational> index;
};

inline GreedyState InitialIndices(const GameSpec& game, const HiderStrategy& p) {
  GreedyState st;
  st.index.assign(game.size(), Rational(0));
  for (size_t j = 0; j < game.size(); ++j) {
    if (p[j] == 0) continue;
    st.pool.push_back(j);
    st.index[j] = p[j] * game.detection(j) / game.time(j);
  }
  return st;
}

// 10 * sum s_j plus the looks needed before every box's index falls to the
// smallest starting index; recurrence cannot be later than that.
inline size_t DefaultAlignedHorizon(const GameSpec& game, const GreedyState& st,
                                    const Alignment& al) {
  Rational floor_index = st.index[st.pool.front()];
  for (size_t j : st.pool) floor_index = std::min(floor_index, st.index[j]);
  size_t warmup = 0;
  long period = 0;
  for (size_t j : st.pool) {
    if (game.detection(j) == 1) {
      ++warmup;
      continue;
    }
    period += al.exponents[j];
    Rational x = st.index[j];
    const Rational miss = game.miss(j);
    while (x > floor_index) {
      x *= miss;
      ++warmup;
    }
  }
  return static_cast<size_t>(10 * period) + warmup;
}

inline BestResponse Greedy(const GameSpec& game, const HiderStrategy& p,
                           std::optional<size_t> preferred, const BestResponseOptions& opts) {
  GreedyState st = InitialIndices(game, p);
  bool any_imperfect = false;
  size_t perfect_pending = 0;
  for (size_t j : st.pool) {
    if (game.detection(j) < 1)
      any_imperfect = true;
    else
      ++perfect_pending;
  }
  std::optional<Alignment> al;
  if (any_imperfect) al = DetectAlignment(game, opts.exponent_bound);
  size_t horizon = opts.horizon;
  if (horizon == 0) {
    horizon = al ? DefaultAlignedHorizon(game, st, *al) : kUnalignedHorizon;
  }

  std::vector<long> looks(game.size(), 0);
  std::map<std::vector<long>, size_t> seen;
  std::vector<size_t> out;
  while (true) {
    if (al && perfect_pending == 0) {
      long rounds = -1;
      for (size_t j : st.pool) {
        if (game.detection(j) == 1) continue;
        const long r = looks[j] / al->exponents[j];
        rounds = rounds < 0 ? r : std::min(rounds, r);
      }
      std::vector<long> key;
      for (size_t j : st.pool) {
        if (game.detection(j) < 1) key.push_back(looks[j] - rounds * al->exponents[j]);
      }
      auto [it, inserted] = seen.emplace(std::move(key), out.size());
      if (!inserted) {
        const auto start = static_cast<std::ptrdiff_t>(it->second);
        return {
            SearchSequence{{out.begin(), out.begin() + start}, {out.begin() + start, out.end()}},
            false};
      }
    }

    std::optional<size_t> pick;
    for (size_t j : st.pool) {
      if (st.index[j] == 0) continue;
      if (!pick || st.index[j] > st.index[*pick]) {
        pick = j;
      } else if (st.index[j] == st.index[*pick] && preferred && j == *preferred) {
        pick = j;
      }
    }
    if (!pick) return {Finite(std::move(out)), false};
    if (out.size() >= horizon) {
      if (al) {
        throw LimitExceeded("best response did not recur within " + std::to_string(horizon) +
                            " looks");
      }
      return {Finite(std::move(out)), true};
    }

    const size_t b = *pick;
    out.push_back(b);
    ++looks[b];
    if (game.detection(b) == 1) {
      st.index[b] = 0;
      --perfect_pending;
    } else {
      st.index[b] *= game.miss(b);
    }
  }
}

}  // namespace internal

// Index-rule best responses to a fixed Hider strategy. Boxes with zero
// probability are never searched. Under alignment the result is eventually
// cyclic; otherwise it is the first `horizon` looks, flagged truncated.
inline std::vector<BestResponse> BestResponses(const GameSpec& game, const HiderStrategy& p,
                                               const TieBreakRule& rule,
                                               const BestResponseOptions& opts = {}) {
  RequireValid(game);
  CheckHider(p, game.size());
  if (game.num_targets != 1) throw UnsupportedGame("best responses need a single target");
  std::vector<BestResponse> out;
  if (std::holds_alternative<LowestIndex>(rule)) {
    out.push_back(internal::Greedy(game, p, std::nullopt, opts));
  } else if (auto* pb = std::get_if<PreferBox>(&rule)) {
    if (pb->box >= game.size()) throw ValidationError({"preferred box out of range"});
    out.push_back(internal::Greedy(game, p, pb->box, opts));
  } else {
    for (size_t b = 0; b < game.size(); ++b) {
      if (p[b] == 0) continue;
      BestResponse br = internal::Greedy(game, p, b, opts);
      br.seq = Canonicalize(std::move(br.seq));
      bool dup = false;
      for (const auto& prev : out) dup = dup || prev.seq == br.seq;
      if (!dup) out.push_back(std::move(br));
    }
  }
  return out;
}

inline BestResponse ComputeBestResponse(const GameSpec& game, const HiderStrategy& p,
                                        const TieBreakRule& rule = LowestIndex{},
                                        const BestResponseOptions& opts = {}) {
  return BestResponses(game, p, rule, opts).front();
}

// inf over pure searches of u(p, xi). Exact when the best response closes a
// cycle; otherwise [partial area of the truncated greedy, value of the
// greedy prefix followed by round-robin over the support].
struct ValueBounds {
  ExtRational lower;
  ExtRational upper;

  bool exact() const { return lower == upper; }
};

inline ValueBounds BestResponseValue(const GameSpec& game, const HiderStrategy& p,
                                     const BestResponseOptions& opts = {}) {
  const BestResponse br = ComputeBestResponse(game, p, LowestIndex{}, opts);
  if (!br.truncated) {
    const ExtRational v = ExpectedSearchTime(game, p, br.seq);
    return {v, v};
  }
  ValueBounds b;
  b.lower = Profile(game, p, br.seq, br.seq.prefix.size()).partial_area;
  SearchSequence completed = br.seq;
  for (size_t j = 0; j < game.size(); ++j) {
    if (p[j] != 0) completed.cycle.push_back(j);
  }
  b.upper = ExpectedSearchTime(game, p, completed);
  return b;
}

// Perfect detection: search in non-increasing p_j / t_j, ties to the lower
// index.
inline SearchSequence SmithOrder(const GameSpec& game, const HiderStrategy& p) {
  RequireValid(game);
  CheckHider(p, game.size());
  if (!game.perfect_detection()) throw UnsupportedGame("Smith's rule needs q=1 in every box");
  std::vector<size_t> order(game.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return p[a] / game.time(a) > p[b] / game.time(b); });
  return Finite(std::move(order));
}

}  // namespace boxsearch

#endif  // BOXSEARCH_BEST_RESPONSE_HPP_
