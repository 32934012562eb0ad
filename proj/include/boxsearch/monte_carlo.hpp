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

#ifndef BOXSEARCH_MONTE_CARLO_HPP_
#define BOXSEARCH_MONTE_CARLO_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "boxsearch/error.hpp"
#include "boxsearch/evaluate.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/multi_target.hpp"
#include "boxsearch/random.hpp"

namespace boxsearch {

struct MonteCarloOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  // Plays needing more looks than this are dropped and counted.
  std::uint64_t look_cap = 1000000;
  unsigned threads = 1;  // 0: hardware concurrency
};

struct MonteCarloReport {
  double mean = 0;
  double std_error = 0;
  std::uint64_t trials = 0;
  std::uint64_t completed = 0;
  std::uint64_t overflow = 0;

  bool within(double exact, double sigmas = 3.0) const {
    return std::abs(mean - exact) <= sigmas * std_error;
  }
};

namespace internal {

// Trials are cut into fixed chunks; chunk c draws from StreamEngine(seed,
// c) and chunk statistics are merged in chunk order, so the report does
// not depend on how chunks are spread over threads.
inline constexpr std::uint64_t kChunkTrials = 4096;

struct ChunkStats {
  std::uint64_t completed = 0;
  std::uint64_t overflow = 0;
  double mean = 0;
  double m2 = 0;  // sum of squared deviations

  void Add(double x) {
    ++completed;
    const double d = x - mean;
    mean += d / static_cast<double>(completed);
    m2 += d * (x - mean);
  }

  void Merge(const ChunkStats& o) {
    overflow += o.overflow;
    if (o.completed == 0) return;
    if (completed == 0) {
      const auto ov = overflow;
      *this = o;
      overflow = ov;
      return;
    }
    const double na = static_cast<double>(completed), nb = static_cast<double>(o.completed);
    const double d = o.mean - mean;
    mean += d * nb / (na + nb);
    m2 += o.m2 + d * d * na * nb / (na + nb);
    completed += o.completed;
  }
};

// Play is a callable (Engine&, ChunkStats&, count) running `count` trials.
template <class Play>
MonteCarloReport RunChunks(const MonteCarloOptions& opts, const Play& play) {
  if (opts.trials < 1) throw ValidationError({"need at least one trial"});
  const std::uint64_t chunks = (opts.trials + kChunkTrials - 1) / kChunkTrials;
  std::vector<ChunkStats> stats(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
      Engine gen = StreamEngine(opts.seed, c);
      const std::uint64_t n = std::min(kChunkTrials, opts.trials - c * kChunkTrials);
      play(gen, stats[c], n);
    }
  };
  unsigned threads =
      opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ChunkStats total;
  for (const auto& s : stats) total.Merge(s);
  MonteCarloReport rep;
  rep.trials = opts.trials;
  rep.completed = total.completed;
  rep.overflow = total.overflow;
  rep.mean = total.mean;
  if (total.completed > 1) {
    const double var = total.m2 / static_cast<double>(total.completed - 1);
    rep.std_error = std::sqrt(var / static_cast<double>(total.completed));
  }
  return rep;
}

// Look times of one box inside one eventually cyclic sequence.
struct BoxLooks {
  std::vector<double> prefix_time;
  std::vector<std::uint64_t> prefix_pos;  // 1-based look numbers
  std::vector<double> cycle_time;         // offset from cycle start
  std::vector<std::uint64_t> cycle_pos;   // 1-based within the cycle
};

struct SequenceTable {
  double prefix_duration = 0;
  double cycle_duration = 0;
  std::uint64_t prefix_len = 0;
  std::uint64_t cycle_len = 0;
  std::vector<BoxLooks> boxes;
};

inline SequenceTable Tabulate(const GameSpec& game, const SearchSequence& s) {
  SequenceTable tab;
  tab.boxes.resize(game.size());
  double t = 0;
  for (size_t i = 0; i < s.prefix.size(); ++i) {
    t += game.time(s.prefix[i]).get_d();
    tab.boxes[s.prefix[i]].prefix_time.push_back(t);
    tab.boxes[s.prefix[i]].prefix_pos.push_back(i + 1);
  }
  tab.prefix_duration = t;
  tab.prefix_len = s.prefix.size();
  t = 0;
  for (size_t i = 0; i < s.cycle.size(); ++i) {
    t += game.time(s.cycle[i]).get_d();
    tab.boxes[s.cycle[i]].cycle_time.push_back(t);
    tab.boxes[s.cycle[i]].cycle_pos.push_back(i + 1);
  }
  tab.cycle_duration = t;
  tab.cycle_len = s.cycle.size();
  return tab;
}

inline std::vector<double> Weights(const std::vector<Rational>& w) {
  std::vector<double> out;
  for (const auto& x : w) out.push_back(x.get_d());
  return out;
}

}  // namespace internal

// Plays `opts.trials` independent games: the hiding box is drawn from
// `hider`, a pure search from `searcher`, and each look in the hiding box
// detects with probability q_j. The number of looks needed in that box is
// geometric, so a play costs O(1) after tabulating the sequences.
inline MonteCarloReport Simulate(const GameSpec& game, const HiderStrategy& hider,
                                 const MixedSearcher& searcher, const MonteCarloOptions& opts) {
  RequireValid(game);
  CheckHider(hider, game.size());
  CheckSearcher(searcher, game.size());
  std::vector<internal::SequenceTable> tables;
  std::vector<Rational> atom_w;
  for (const auto& a : searcher.atoms) {
    for (size_t j = 0; j < game.size(); ++j) {
      if (hider[j] != 0 && ConditionalExpectedTime(game, j, a.seq).is_infinite()) {
        throw UnsupportedGame("search " + Format(a.seq) + " leaves box " + std::to_string(j + 1) +
                              " unfound with positive probability; payoff is unbounded");
      }
    }
    tables.push_back(internal::Tabulate(game, a.seq));
    atom_w.push_back(a.weight);
  }
  const auto atom_weights = internal::Weights(atom_w);
  const auto box_weights = internal::Weights(hider.probs);
  std::vector<double> q;
  for (size_t j = 0; j < game.size(); ++j) q.push_back(game.detection(j).get_d());

  auto play = [&](Engine& gen, internal::ChunkStats& st, std::uint64_t count) {
    std::discrete_distribution<size_t> pick_atom(atom_weights.begin(), atom_weights.end());
    std::discrete_distribution<size_t> pick_box(box_weights.begin(), box_weights.end());
    for (std::uint64_t trial = 0; trial < count; ++trial) {
      const auto& tab = tables[pick_atom(gen)];
      const size_t j = pick_box(gen);
      std::uint64_t look = 1;  // which look in box j finds the target
      if (q[j] < 1) look += std::geometric_distribution<std::uint64_t>(q[j])(gen);
      const auto& bl = tab.boxes[j];
      double time;
      std::uint64_t pos;
      if (look <= bl.prefix_time.size()) {
        time = bl.prefix_time[look - 1];
        pos = bl.prefix_pos[look - 1];
      } else {
        const std::uint64_t rest = look - bl.prefix_time.size() - 1;
        const std::uint64_t per = bl.cycle_time.size();
        const std::uint64_t rounds = rest / per, idx = rest % per;
        time = tab.prefix_duration + static_cast<double>(rounds) * tab.cycle_duration +
               bl.cycle_time[idx];
        pos = tab.prefix_len + rounds * tab.cycle_len + bl.cycle_pos[idx];
      }
      if (pos > opts.look_cap) {
        ++st.overflow;
        continue;
      }
      st.Add(time);
    }
  };
  return internal::RunChunks(opts, play);
}

// As Simulate, for a Searcher that redraws a rotation (a single round over
// all boxes) at the start of every round. Needs a common q.
inline MonteCarloReport SimulatePerRound(const GameSpec& game, const HiderStrategy& hider,
                                         const MixedSearcher& rotations,
                                         const MonteCarloOptions& opts) {
  RequireValid(game);
  CheckHider(hider, game.size());
  CheckSearcher(rotations, game.size());
  if (!game.equal_detection()) throw UnsupportedGame("per-round rotations need a common q");
  const size_t n = game.size();
  std::vector<std::vector<double>> reach;  // reach[atom][box]: time to finish that box
  std::vector<std::vector<std::uint64_t>> reach_pos;
  std::vector<Rational> w;
  for (const auto& a : rotations.atoms) {
    const auto& order = a.seq.cycle.empty() ? a.seq.prefix : a.seq.cycle;
    if (order.size() != n) throw ValidationError({"per-round atoms must cover every box once"});
    std::vector<double> r(n, -1);
    std::vector<std::uint64_t> rp(n, 0);
    double t = 0;
    for (size_t i = 0; i < n; ++i) {
      t += game.time(order[i]).get_d();
      r[order[i]] = t;
      rp[order[i]] = i + 1;
    }
    if (std::find(r.begin(), r.end(), -1.0) != r.end()) {
      throw ValidationError({"per-round atoms must cover every box once"});
    }
    reach.push_back(std::move(r));
    reach_pos.push_back(std::move(rp));
    w.push_back(a.weight);
  }
  const auto atom_weights = internal::Weights(w);
  const auto box_weights = internal::Weights(hider.probs);
  const double q = game.detection(0).get_d();
  const double round = game.total_time().get_d();

  auto play = [&](Engine& gen, internal::ChunkStats& st, std::uint64_t count) {
    std::discrete_distribution<size_t> pick_atom(atom_weights.begin(), atom_weights.end());
    std::discrete_distribution<size_t> pick_box(box_weights.begin(), box_weights.end());
    for (std::uint64_t trial = 0; trial < count; ++trial) {
      const size_t j = pick_box(gen);
      std::uint64_t failed = q < 1 ? std::geometric_distribution<std::uint64_t>(q)(gen) : 0;
      const size_t a = pick_atom(gen);  // only the last round's rotation matters
      const std::uint64_t pos = failed * n + reach_pos[a][j];
      if (pos > opts.look_cap) {
        ++st.overflow;
        continue;
      }
      st.Add(static_cast<double>(failed) * round + reach[a][j]);
    }
  };
  return internal::RunChunks(opts, play);
}

// Multi-target plays: a k-subset from `hider`, an order from `searcher`,
// payoff the time at which the last hidden target is reached.
inline MonteCarloReport SimulateMulti(const GameSpec& game, const SubsetDistribution& hider,
                                      const MultiSearcher& searcher,
                                      const MonteCarloOptions& opts) {
  RequireValid(game);
  if (hider.n() != game.size() || searcher.distribution().n() != game.size()) {
    throw ValidationError({"strategy size does not match the game"});
  }
  const SubsetSampler draw_hider(hider);
  std::vector<double> t;
  for (size_t j = 0; j < game.size(); ++j) t.push_back(game.time(j).get_d());

  auto play = [&](Engine& gen, internal::ChunkStats& st, std::uint64_t count) {
    for (std::uint64_t trial = 0; trial < count; ++trial) {
      const Subset h = draw_hider(gen);
      const auto order = searcher.Sample(gen);
      std::vector<bool> in(t.size(), false);
      for (size_t j : h) in[j] = true;
      size_t left = h.size();
      double time = 0;
      for (size_t b : order) {
        time += t[b];
        if (in[b] && --left == 0) break;
      }
      st.Add(time);
    }
  };
  return internal::RunChunks(opts, play);
}

}  // namespace boxsearch

#endif  // BOXSEARCH_MONTE_CARLO_HPP_
