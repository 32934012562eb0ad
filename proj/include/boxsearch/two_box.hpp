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

#ifndef BOXSEARCH_TWO_BOX_HPP_
#define BOXSEARCH_TWO_BOX_HPP_

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "boxsearch/best_response.hpp"
#include "boxsearch/closed_form.hpp"
#include "boxsearch/error.hpp"
#include "boxsearch/evaluate.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/solution.hpp"

namespace boxsearch {

// Best responses to one member of the Hider family and the performance
// vectors of its two extremes. `extreme_a` resolves every tie toward box 1,
// `extreme_b` toward box 2.
struct FrontierSegment {
  long r = 0;
  HiderStrategy hider;
  SearchSequence extreme_a;
  SearchSequence extreme_b;
  PerformanceVector a;
  PerformanceVector b;
};

namespace internal {

inline void RequireTwoBoxAligned(const GameSpec& game) {
  RequireValid(game);
  if (game.size() != 2 || game.num_targets != 1) {
    throw UnsupportedGame("two-box solver needs n=2 and a single target");
  }
  if (game.detection(0) == 1 || game.detection(1) == 1) {
    throw UnsupportedGame("two-box solver needs imperfect detection in both boxes");
  }
}

// Returns (x, y) with a*x + b*y = gcd(a, b).
inline std::pair<long, long> Bezout(long a, long b) {
  if (b == 0) return {1, 0};
  auto [x, y] = Bezout(b, a % b);
  return {y, x - (a / b) * y};
}

}  // namespace internal

// The positive rational g with g^{s_2} = 1 - q_1 and g^{s_1} = 1 - q_2.
// Every tie in a best response happens when p_1/p_2 is p*_1/p*_2 times an
// integer power of g, so that grid indexes the whole frontier. When s_2 = 1
// this is g = 1 - q_1.
inline Rational FrontierStep(const GameSpec& game, const BestResponseOptions& opts = {}) {
  internal::RequireTwoBoxAligned(game);
  auto al = DetectAlignment(game, opts.exponent_bound);
  if (!al) throw UnsupportedGame("detection probabilities admit no alignment");
  const long s1 = al->exponents[0], s2 = al->exponents[1];
  const auto [x, y] = internal::Bezout(s2, s1);  // x*s2 + y*s1 = 1
  Rational g = Pow(game.miss(0), x) * Pow(game.miss(1), y);
  if (Pow(g, s2) != game.miss(0) || Pow(g, s1) != game.miss(1)) {
    throw Error("frontier step failed to reproduce the miss probabilities");
  }
  return g;
}

// p^(r) proportional to (p*_1 g^{-r}, p*_2): larger r favours box 1.
inline HiderStrategy FrontierHider(const GameSpec& game, const Rational& step, long r) {
  const HiderStrategy eq = EqualizingHider(game);
  return Normalized({eq[0] * Pow(step, -r), eq[1]});
}

// Extreme best responses (prefer box 1, prefer box 2), canonicalized.
inline std::pair<SearchSequence, SearchSequence> ExtremeBestResponses(
    const GameSpec& game, const HiderStrategy& p, const BestResponseOptions& opts = {}) {
  internal::RequireTwoBoxAligned(game);
  if (!DetectAlignment(game, opts.exponent_bound)) {
    throw UnsupportedGame("detection probabilities admit no alignment");
  }
  auto first = ComputeBestResponse(game, p, PreferBox{0}, opts);
  auto second = ComputeBestResponse(game, p, PreferBox{1}, opts);
  return {Canonicalize(std::move(first.seq)), Canonicalize(std::move(second.seq))};
}

inline FrontierSegment MakeSegment(const GameSpec& game, const Rational& step, long r,
                                   const BestResponseOptions& opts = {}) {
  FrontierSegment seg;
  seg.r = r;
  seg.hider = FrontierHider(game, step, r);
  std::tie(seg.extreme_a, seg.extreme_b) = ExtremeBestResponses(game, seg.hider, opts);
  seg.a = Performance(game, seg.extreme_a);
  seg.b = Performance(game, seg.extreme_b);
  return seg;
}

// Segments for r = r_min..r_max in increasing r. Segment r's `a` endpoint
// is segment r+1's `b` endpoint.
inline std::vector<FrontierSegment> Frontier(const GameSpec& game, long r_min, long r_max,
                                             const BestResponseOptions& opts = {}) {
  if (r_min > r_max) throw ValidationError({"r_min exceeds r_max"});
  const Rational step = FrontierStep(game, opts);
  std::vector<FrontierSegment> out;
  for (long r = r_min; r <= r_max; ++r) out.push_back(MakeSegment(game, step, r, opts));
  return out;
}

inline bool StraddlesDiagonal(const FrontierSegment& seg) {
  for (const auto* v : {&seg.a, &seg.b}) {
    for (const auto& x : *v) {
      if (x.is_infinite()) throw ValidationError({"segment endpoint is infinite"});
    }
  }
  const Rational da = seg.a[0].value() - seg.a[1].value();
  const Rational db = seg.b[0].value() - seg.b[1].value();
  return sgn(da) * sgn(db) <= 0;
}

// beta with beta*va + (1-beta)*vb on the diagonal T_1 = T_2.
inline Rational MixtureWeight(const PerformanceVector& va, const PerformanceVector& vb) {
  if (va.size() != 2 || vb.size() != 2)
    throw ValidationError({"performance vectors must have two entries"});
  const Rational da = va[0].value() - va[1].value();
  const Rational db = vb[0].value() - vb[1].value();
  if (da == db) {
    if (da == 0) return 1;
    throw Error("segment is parallel to the diagonal and off it");
  }
  Rational beta = db / (db - da);
  if (beta < 0 || beta > 1) throw Error("segment does not straddle the diagonal");
  return beta;
}

struct TwoBoxOptions {
  long r_bound = 1000;
  BestResponseOptions best_response;
};

// Walks r = 0, 1, -1, 2, -2, ... until a segment straddles the diagonal;
// the crossing gives the value, the segment's Hider strategy is optimal and
// the Searcher mixes the two extremes.
inline SolveResult SolveTwoBox(const GameSpec& game, const TwoBoxOptions& opts = {}) {
  const Rational step = FrontierStep(game, opts.best_response);
  for (long i = 0; i <= 2 * opts.r_bound; ++i) {
    const long r = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
    FrontierSegment seg = MakeSegment(game, step, r, opts.best_response);
    if (!StraddlesDiagonal(seg)) continue;

    SolveResult res;
    res.hider = seg.hider;
    const Rational beta = MixtureWeight(seg.b, seg.a);
    if (seg.extreme_a == seg.extreme_b || beta == 1) {
      res.searcher = MixedSearcher::Pure(seg.extreme_b);
      res.value = seg.b[0].value();
    } else if (beta == 0) {
      res.searcher = MixedSearcher::Pure(seg.extreme_a);
      res.value = seg.a[0].value();
    } else {
      res.searcher.atoms = {{seg.extreme_b, beta}, {seg.extreme_a, 1 - beta}};
      res.value = beta * seg.b[0].value() + (1 - beta) * seg.a[0].value();
    }
    return res;
  }
  throw LimitExceeded("no frontier segment with |r| <= " + std::to_string(opts.r_bound) +
                      " meets the diagonal");
}

// CSV rows "r,T1_a,T2_a,T1_b,T2_b"; exact rationals unless digits >= 0.
inline std::string FrontierCsv(const std::vector<FrontierSegment>& segs, int digits = -1) {
  auto cell = [&](const ExtRational& x) { return digits >= 0 ? x.decimal(digits) : x.str(); };
  std::string out = "r,T1_a,T2_a,T1_b,T2_b\n";
  for (const auto& s : segs) {
    out += std::to_string(s.r) + "," + cell(s.a[0]) + "," + cell(s.a[1]) + "," + cell(s.b[0]) +
           "," + cell(s.b[1]) + "\n";
  }
  return out;
}

// Frontier polyline with the diagonal x = y overlaid.
inline std::string FrontierSvg(const std::vector<FrontierSegment>& segs) {
  if (segs.empty()) throw ValidationError({"no segments to draw"});
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(segs.front().b[0].to_double(), segs.front().b[1].to_double());
  for (const auto& s : segs) pts.emplace_back(s.a[0].to_double(), s.a[1].to_double());

  double lo = pts.front().first, hi = lo;
  for (auto [x, y] : pts) {
    lo = std::min({lo, x, y});
    hi = std::max({hi, x, y});
  }
  const double pad = (hi - lo) * 0.05 + 1e-9;
  lo -= pad;
  hi += pad;
  constexpr double kSize = 400.0;
  auto sx = [&](double x) { return (x - lo) / (hi - lo) * kSize; };
  auto sy = [&](double y) { return kSize - (y - lo) / (hi - lo) * kSize; };
  char buf[96];
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 400 400\" width=\"400\" "
      "height=\"400\">\n";
  std::snprintf(buf, sizeof buf, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"", sx(lo),
                sy(lo), sx(hi), sy(hi));
  out += buf;
  out +=
      " stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n<polyline fill=\"none\" stroke=\"black\" "
      "points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", sx(pts[i].first),
                  sy(pts[i].second));
    out += buf;
  }
  out += "\"/>\n</svg>\n";
  return out;
}

}  // namespace boxsearch

#endif  // BOXSEARCH_TWO_BOX_HPP_
