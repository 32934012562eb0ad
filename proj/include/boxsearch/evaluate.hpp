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

#ifndef BOXSEARCH_EVALUATE_HPP_
#define BOXSEARCH_EVALUATE_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "boxsearch/error.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/rational.hpp"
#include "boxsearch/sequence.hpp"

namespace boxsearch {

// A probability vector over boxes.
struct HiderStrategy {
  std::vector<Rational> probs;

  size_t size() const { return probs.size(); }
  const Rational& operator[](size_t j) const { return probs[j]; }

  friend bool operator==(const HiderStrategy&, const HiderStrategy&) = default;
};

inline HiderStrategy PointMass(size_t n, size_t j) {
  HiderStrategy h{std::vector<Rational>(n, Rational(0))};
  h.probs.at(j) = 1;
  return h;
}

inline HiderStrategy Uniform(size_t n) {
  return HiderStrategy{std::vector<Rational>(n, Rational(1, static_cast<long>(n)))};
}

// Normalizes nonnegative weights into a probability vector.
inline HiderStrategy Normalized(std::vector<Rational> weights) {
  Rational total = 0;
  for (const auto& w : weights) {
    if (w < 0) throw ValidationError({"negative hiding weight"});
    total += w;
  }
  if (total == 0) throw ValidationError({"hiding weights sum to zero"});
  for (auto& w : weights) w /= total;
  return HiderStrategy{std::move(weights)};
}

inline void CheckHider(const HiderStrategy& p, size_t n) {
  std::vector<std::string> errors;
  if (p.size() != n)
    errors.push_back("hider strategy has " + std::to_string(p.size()) + " entries, game has " +
                     std::to_string(n) + " boxes");
  Rational total = 0;
  for (const auto& x : p.probs) {
    if (x < 0) errors.push_back("hider probability " + ToString(x) + " is negative");
    total += x;
  }
  if (total != 1) errors.push_back("hider probabilities sum to " + ToString(total));
  if (!errors.empty()) throw ValidationError(std::move(errors));
}

// A finite mixture of pure searches.
struct MixedSearcher {
  struct Atom {
    SearchSequence seq;
    Rational weight;

    friend bool operator==(const Atom&, const Atom&) = default;
  };
  std::vector<Atom> atoms;

  static MixedSearcher Pure(SearchSequence s) {
    return MixedSearcher{{{std::move(s), Rational(1)}}};
  }
};

inline void CheckSearcher(const MixedSearcher& theta, size_t n) {
  std::vector<std::string> errors;
  Rational total = 0;
  if (theta.atoms.empty()) errors.push_back("searcher mixture is empty");
  for (const auto& a : theta.atoms) {
    if (a.weight <= 0) errors.push_back("searcher weight must be positive");
    total += a.weight;
    CheckIndices(a.seq, n);
  }
  if (!theta.atoms.empty() && total != 1)
    errors.push_back("searcher weights sum to " + ToString(total));
  if (!errors.empty()) throw ValidationError(std::move(errors));
}

using PerformanceVector = std::vector<ExtRational>;

// Expected time to find a target known to be in `box`: prefix looks summed
// directly, the cycle via its geometric closed form.
inline ExtRational ConditionalExpectedTime(const GameSpec& game, size_t box,
                                           const SearchSequence& seq) {
  if (box >= game.size()) throw ValidationError({"box index out of range"});
  CheckIndices(seq, game.size());
  const Rational q = game.detection(box);
  const Rational miss = 1 - q;

  Rational elapsed = 0, survive = 1, acc = 0;
  for (size_t b : seq.prefix) {
    elapsed += game.time(b);
    if (b == box) {
      acc += survive * q * elapsed;
      survive *= miss;
    }
  }
  if (survive == 0) return acc;
  if (seq.cycle.empty()) return ExtRational::Infinity();

  Rational tau = 0, within = 1, weighted = 0;
  size_t looks = 0;
  for (size_t b : seq.cycle) {
    tau += game.time(b);
    if (b == box) {
      weighted += within * q * tau;
      within *= miss;
      ++looks;
    }
  }
  if (looks == 0) return ExtRational::Infinity();
  const Rational& duration = tau;
  const Rational r = within;  // miss^looks
  const Rational cycle_value = weighted / (1 - r) + duration * r / (1 - r);
  return Rational(acc + survive * (elapsed + cycle_value));
}

inline PerformanceVector Performance(const GameSpec& game, const SearchSequence& seq) {
  PerformanceVector v;
  v.reserve(game.size());
  for (size_t j = 0; j < game.size(); ++j) v.push_back(ConditionalExpectedTime(game, j, seq));
  return v;
}

// u(p, xi) through the survival-area identity E[T] = sum_k t_{a_k} P(T >
// T_{k-1}), evaluated per hiding box with a geometric tail over the cycle.
// This route shares no code with ConditionalExpectedTime.
inline ExtRational ExpectedSearchTime(const GameSpec& game, const HiderStrategy& p,
                                      const SearchSequence& seq) {
  CheckHider(p, game.size());
  CheckIndices(seq, game.size());
  Rational total = 0;
  for (size_t j = 0; j < game.size(); ++j) {
    if (p[j] == 0) continue;
    const Rational miss = game.miss(j);
    Rational survive = 1, area = 0;
    for (size_t b : seq.prefix) {
      area += game.time(b) * survive;
      if (b == j) survive *= miss;
    }
    if (survive != 0) {
      if (seq.cycle.empty()) return ExtRational::Infinity();
      Rational within = 1, cycle_area = 0;
      for (size_t b : seq.cycle) {
        cycle_area += game.time(b) * within;
        if (b == j) within *= miss;
      }
      if (within == 1) return ExtRational::Infinity();
      area += survive * cycle_area / (1 - within);
    }
    total += p[j] * area;
  }
  return total;
}

inline ExtRational ExpectedSearchTime(const GameSpec& game, const HiderStrategy& p,
                                      const MixedSearcher& theta) {
  CheckSearcher(theta, game.size());
  ExtRational total(0);
  for (const auto& a : theta.atoms) total = total + a.weight * ExpectedSearchTime(game, p, a.seq);
  return total;
}

// u(j, theta) for a pure hiding box j.
inline ExtRational PayoffAgainstBox(const GameSpec& game, size_t box, const MixedSearcher& theta) {
  CheckSearcher(theta, game.size());
  ExtRational total(0);
  for (const auto& a : theta.atoms)
    total = total + a.weight * ConditionalExpectedTime(game, box, a.seq);
  return total;
}

struct LookRecord {
  size_t box;
  Rational time;        // T_k, cumulative
  Rational found_prob;  // P_k, cumulative
};

struct CumulativeProfile {
  std::vector<LookRecord> looks;
  Rational partial_area;   // sum_{k<=K} (T_k - T_{k-1})(1 - P_{k-1})
  ExtRational tail_bound;  // certified bound on the remaining area

  ExtRational upper() const { return ExtRational(partial_area) + tail_bound; }
};

// T_k and P_k for the first K looks. The tail bound uses the worst
// per-cycle survival factor over boxes the Hider may occupy.
inline CumulativeProfile Profile(const GameSpec& game, const HiderStrategy& p,
                                 const SearchSequence& seq, size_t looks) {
  CheckHider(p, game.size());
  CheckIndices(seq, game.size());
  if (seq.cycle.empty() && looks > seq.prefix.size()) {
    throw ValidationError({"look count exceeds the length of a finite sequence"});
  }
  const size_t n = game.size();
  std::vector<Rational> survive(n, Rational(1));
  CumulativeProfile out;
  Rational elapsed = 0, found = 0;
  for (size_t k = 0; k < looks; ++k) {
    const size_t b = seq.at(k);
    out.partial_area += game.time(b) * (1 - found);
    elapsed += game.time(b);
    found += p[b] * survive[b] * game.detection(b);
    survive[b] *= game.miss(b);
    out.looks.push_back({b, elapsed, found});
  }

  const Rational unfound = 1 - found;
  if (unfound == 0) {
    out.tail_bound = 0;
    return out;
  }
  Rational prefix_rest = 0;
  for (size_t k = looks; k < seq.prefix.size(); ++k) prefix_rest += game.time(seq.prefix[k]);

  if (seq.cycle.empty()) {
    // Remaining mass is found within the prefix or never.
    bool exhausted = true;
    std::vector<Rational> s = survive;
    for (size_t k = looks; k < seq.prefix.size(); ++k) s[seq.prefix[k]] *= game.miss(seq.prefix[k]);
    for (size_t j = 0; j < n; ++j) {
      if (p[j] != 0 && s[j] != 0) exhausted = false;
    }
    out.tail_bound =
        exhausted ? ExtRational(Rational(unfound * prefix_rest)) : ExtRational::Infinity();
    return out;
  }

  Rational duration = 0;
  std::vector<Rational> per_cycle(n, Rational(1));
  for (size_t b : seq.cycle) {
    duration += game.time(b);
    per_cycle[b] *= game.miss(b);
  }
  Rational worst = 0;
  for (size_t j = 0; j < n; ++j) {
    if (p[j] == 0 || survive[j] == 0) continue;
    worst = std::max(worst, per_cycle[j]);
  }
  if (worst == 1) {
    out.tail_bound = ExtRational::Infinity();
  } else {
    out.tail_bound = Rational(unfound * (prefix_rest + duration / (1 - worst)));
  }
  return out;
}

// Hiding distribution after an unsuccessful search of `box`.
inline HiderStrategy PosteriorUpdate(const GameSpec& game, const HiderStrategy& p, size_t box) {
  CheckHider(p, game.size());
  if (box >= game.size()) throw ValidationError({"box index out of range"});
  const Rational fail = 1 - p[box] * game.detection(box);
  if (fail == 0) throw Error("search of box " + std::to_string(box + 1) + " cannot fail");
  HiderStrategy out = p;
  out.probs[box] *= game.miss(box);
  for (auto& x : out.probs) x /= fail;
  return out;
}

// psi_{j,m}: probability the m-th look in a box finds the target, per unit
// time.
inline Rational SearchIndex(const Rational& p, const Rational& q, const Rational& t, long m) {
  if (m < 1) throw ValidationError({"look number must be at least 1"});
  return p * Pow(1 - q, m - 1) * q / t;
}

}  // namespace boxsearch

#endif  // BOXSEARCH_EVALUATE_HPP_
