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

#ifndef BOXSEARCH_MULTI_TARGET_HPP_
#define BOXSEARCH_MULTI_TARGET_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "boxsearch/error.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/random.hpp"
#include "boxsearch/rational.hpp"

namespace boxsearch {

// Elementary symmetric polynomial S_j of `values`: the sum over all
// j-subsets of the product of their entries.
inline Rational Esp(std::span<const Rational> values, size_t j) {
  if (j > values.size()) return 0;
  std::vector<Rational> e(j + 1, Rational(0));
  e[0] = 1;
  for (const auto& v : values) {
    for (size_t m = j; m >= 1; --m) e[m] += v * e[m - 1];
  }
  return e[j];
}

using Subset = std::vector<size_t>;  // ascending box indices

// Targets hidden in k distinct boxes with probability proportional to the
// product of their search times.
class SubsetDistribution {
 public:
  SubsetDistribution(std::vector<Rational> times, size_t k)
      : times_(std::move(times)), k_(k), normalizer_(Esp(times_, k)) {
    if (k_ < 1 || k_ > times_.size()) throw ValidationError({"targets must satisfy 1 <= k <= n"});
  }

  size_t k() const { return k_; }
  size_t n() const { return times_.size(); }
  const std::vector<Rational>& times() const { return times_; }
  const Rational& normalizer() const { return normalizer_; }

  Rational prob(const Subset& h) const {
    if (h.size() != k_) return 0;
    Rational prod = 1;
    for (size_t j : h) prod *= times_.at(j);
    return prod / normalizer_;
  }

  // Every k-subset with its probability, in lexicographic order.
  std::vector<std::pair<Subset, Rational>> Enumerate() const {
    std::vector<std::pair<Subset, Rational>> out;
    std::vector<bool> mask(n(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k_), true);
    do {
      Subset h;
      for (size_t j = 0; j < n(); ++j) {
        if (mask[j]) h.push_back(j);
      }
      Rational p = prob(h);
      out.emplace_back(std::move(h), std::move(p));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
  }

 private:
  std::vector<Rational> times_;
  size_t k_;
  Rational normalizer_;
};

namespace internal {

inline void RequireMultiTarget(const GameSpec& game) {
  RequireValid(game);
  if (!game.perfect_detection())
    throw UnsupportedGame("multi-target solver needs q=1 in every box");
}

inline std::vector<Rational> Times(const GameSpec& game) {
  std::vector<Rational> t;
  for (const auto& b : game.boxes) t.push_back(b.search_time);
  return t;
}

inline void RequirePermutation(const std::vector<size_t>& perm, size_t n) {
  std::vector<size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw ValidationError({"search order is not a permutation of the boxes"});
  }
  if (sorted.size() != n) throw ValidationError({"search order is not a permutation of the boxes"});
}

}  // namespace internal

inline SubsetDistribution HiderMulti(const GameSpec& game) {
  internal::RequireMultiTarget(game);
  return SubsetDistribution(internal::Times(game), static_cast<size_t>(game.num_targets));
}

// V_k = t(B) - S_{k+1} / S_k.
inline Rational ValueMulti(const GameSpec& game) {
  internal::RequireMultiTarget(game);
  const auto t = internal::Times(game);
  const auto k = static_cast<size_t>(game.num_targets);
  return game.total_time() - Esp(t, k + 1) / Esp(t, k);
}

// Time to finish searching every box of `hidden` when boxes are opened in
// `order`.
inline Rational CompletionTime(const GameSpec& game, const Subset& hidden,
                               const std::vector<size_t>& order) {
  std::vector<bool> in(game.size(), false);
  for (size_t j : hidden) in.at(j) = true;
  size_t left = hidden.size();
  Rational t = 0;
  for (size_t b : order) {
    if (left == 0) break;
    t += game.time(b);
    if (in.at(b)) --left;
  }
  if (left != 0) throw ValidationError({"search order misses a hiding box"});
  return t;
}

// u(nu, order) via the survival sum: the first k boxes are always searched,
// box order[j] (j >= k) only while some target remains, with probability
// 1 - S_k(first j boxes) / S_k.
inline Rational ExpectedTimeVsNu(const GameSpec& game, const std::vector<size_t>& order) {
  internal::RequireMultiTarget(game);
  internal::RequirePermutation(order, game.size());
  const auto k = static_cast<size_t>(game.num_targets);
  const Rational sk = Esp(internal::Times(game), k);
  std::vector<Rational> seen;
  Rational total = 0;
  for (size_t j = 0; j < order.size(); ++j) {
    const Rational& t = game.time(order[j]);
    total += j < k ? t : t * (1 - Esp(seen, k) / sk);
    seen.push_back(t);
  }
  return total;
}

// Draws k-subsets with probability exactly proportional to pi(H): scanning
// boxes in order, box j joins with probability
// t_j S_{m-1}(later boxes) / S_m(j and later boxes), m = slots still open.
class SubsetSampler {
 public:
  explicit SubsetSampler(const SubsetDistribution& dist) : n_(dist.n()), k_(dist.k()) {
    const auto& t = dist.times();
    // suffix[j][m] = S_m(t_j..t_{n-1})
    std::vector<std::vector<Rational>> suffix(n_ + 1, std::vector<Rational>(k_ + 1, Rational(0)));
    suffix[n_][0] = 1;
    for (size_t j = n_; j-- > 0;) {
      suffix[j][0] = 1;
      for (size_t m = 1; m <= k_; ++m)
        suffix[j][m] = suffix[j + 1][m] + t[j] * suffix[j + 1][m - 1];
    }
    exact_.assign(n_, std::vector<Rational>(k_ + 1, Rational(0)));
    include_.assign(n_, std::vector<double>(k_ + 1, 0.0));
    for (size_t j = 0; j < n_; ++j) {
      for (size_t m = 1; m <= k_; ++m) {
        if (suffix[j][m] == 0) continue;
        exact_[j][m] = t[j] * suffix[j + 1][m - 1] / suffix[j][m];
        include_[j][m] = exact_[j][m].get_d();
      }
    }
  }

  // Inclusion probability of box j when m slots remain.
  const Rational& inclusion(size_t j, size_t m) const { return exact_.at(j).at(m); }

  template <class URBG>
  Subset operator()(URBG& gen) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Subset h;
    size_t m = k_;
    for (size_t j = 0; j < n_ && m > 0; ++j) {
      if (n_ - j == m || unit(gen) < include_[j][m]) {
        h.push_back(j);
        --m;
      }
    }
    return h;
  }

 private:
  size_t n_;
  size_t k_;
  std::vector<std::vector<Rational>> exact_;
  std::vector<std::vector<double>> include_;
};

inline Subset SampleHider(const SubsetDistribution& dist, std::uint64_t seed) {
  Engine gen(seed);
  return SubsetSampler(dist)(gen);
}

// Search the boxes of `prefix_set` (ascending), then the rest in a
// uniformly random order.
struct PrefixThenUniform {
  Subset prefix_set;
};

// The optimal Searcher: choose PrefixThenUniform{H} with probability nu(H).
class MultiSearcher {
 public:
  static constexpr size_t kMaxExpandBoxes = 8;

  explicit MultiSearcher(SubsetDistribution dist) : dist_(std::move(dist)), sampler_(dist_) {}

  const SubsetDistribution& distribution() const { return dist_; }

  template <class URBG>
  std::vector<size_t> Sample(URBG& gen) const {
    Subset h = sampler_(gen);
    std::vector<bool> in(dist_.n(), false);
    for (size_t j : h) in[j] = true;
    std::vector<size_t> order = h;
    const auto split = static_cast<std::ptrdiff_t>(order.size());
    for (size_t j = 0; j < dist_.n(); ++j) {
      if (!in[j]) order.push_back(j);
    }
    std::shuffle(order.begin() + split, order.end(), gen);
    return order;
  }

  struct Atom {
    std::vector<size_t> order;
    Rational weight;
  };

  // The mixture written out over permutations: nu(H) / (n-k)! on each
  // completion of H.
  std::vector<Atom> Expand() const {
    if (dist_.n() > kMaxExpandBoxes) {
      throw LimitExceeded("explicit searcher expansion is limited to n <= 8");
    }
    Rational fact = 1;
    for (size_t i = 2; i <= dist_.n() - dist_.k(); ++i) fact *= static_cast<long>(i);
    std::vector<Atom> out;
    for (const auto& [h, p] : dist_.Enumerate()) {
      std::vector<size_t> rest;
      std::vector<bool> in(dist_.n(), false);
      for (size_t j : h) in[j] = true;
      for (size_t j = 0; j < dist_.n(); ++j) {
        if (!in[j]) rest.push_back(j);
      }
      do {
        std::vector<size_t> order = h;
        order.insert(order.end(), rest.begin(), rest.end());
        out.push_back({std::move(order), p / fact});
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
    return out;
  }

  // u(H', xi_H): exact, by enumerating the suffix orders.
  Rational PayoffOfPure(const GameSpec& game, const Subset& hidden,
                        const PrefixThenUniform& xi) const {
    std::vector<bool> in(dist_.n(), false);
    for (size_t j : xi.prefix_set) in.at(j) = true;
    std::vector<size_t> rest;
    for (size_t j = 0; j < dist_.n(); ++j) {
      if (!in[j]) rest.push_back(j);
    }
    Rational total = 0;
    long count = 0;
    do {
      std::vector<size_t> order = xi.prefix_set;
      order.insert(order.end(), rest.begin(), rest.end());
      total += CompletionTime(game, hidden, order);
      ++count;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return total / count;
  }

  // u(H', theta) from the explicit expansion.
  Rational PayoffAgainst(const GameSpec& game, const Subset& hidden) const {
    Rational total = 0;
    for (const auto& a : Expand()) total += a.weight * CompletionTime(game, hidden, a.order);
    return total;
  }

 private:
  SubsetDistribution dist_;
  SubsetSampler sampler_;
};

inline MultiSearcher SearcherMulti(const GameSpec& game) { return MultiSearcher(HiderMulti(game)); }

}  // namespace boxsearch

#endif  // BOXSEARCH_MULTI_TARGET_HPP_
