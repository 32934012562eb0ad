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

#include "boxsearch/two_box.hpp"

#include <gtest/gtest.h>

#include <random>

#include "boxsearch/certificate.hpp"
#include "boxsearch/closed_form.hpp"
#include "boxsearch/io.hpp"
#include "oracles.hpp"

namespace boxsearch {
namespace {

using testing::R;

GameSpec TwoBox() { return MakeGame({R(1), R(1)}, {R(1, 2), R(15, 16)}); }
SearchSequence Xi1() { return FromOneBased({}, {1, 2, 1, 1, 1}); }
SearchSequence Xi2() { return FromOneBased({}, {2, 1, 1, 1, 1}); }
PerformanceVector Vec(const Rational& a, const Rational& b) {
  return {ExtRational(a), ExtRational(b)};
}

TEST(Extremes, AgainstEqualizingHider) {
  const auto [a, b] = ExtremeBestResponses(TwoBox(), EqualizingHider(TwoBox()));
  EXPECT_EQ(a, Xi1());
  EXPECT_EQ(b, Xi2());
}

TEST(Extremes, AgainstShiftedHider) {
  const auto [a, b] = ExtremeBestResponses(TwoBox(), HiderStrategy{{R(15, 19), R(4, 19)}});
  EXPECT_TRUE(SameSearch(a, FromOneBased({1}, {1, 2, 1, 1, 1})));
  EXPECT_TRUE(SameSearch(b, FromOneBased({1}, {2, 1, 1, 1, 1})));
  EXPECT_EQ(b, Xi1());
}

TEST(Extremes, SymmetricGame) {
  const GameSpec g = MakeGame({R(1), R(1)}, {R(1, 2), R(1, 2)});
  const auto [a, b] = ExtremeBestResponses(g, EqualizingHider(g));
  EXPECT_EQ(a, Cyclic({0, 1}));
  EXPECT_EQ(b, Cyclic({1, 0}));
}

// Each extreme is the better of the two for its own box.
TEST(Extremes, MinimizeOwnBox) {
  const GameSpec g = TwoBox();
  const Rational step = FrontierStep(g);
  for (long r = -3; r <= 3; ++r) {
    const FrontierSegment seg = MakeSegment(g, step, r);
    EXPECT_LE(seg.a[0], seg.b[0]);
    EXPECT_LE(seg.b[1], seg.a[1]);
  }
}

TEST(Frontier, TwoBoxSegments) {
  const auto segs = Frontier(TwoBox(), 0, 1);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].a, Vec(R(38, 15), R(7, 3)));
  EXPECT_EQ(segs[0].b, Vec(R(46, 15), R(4, 3)));
  EXPECT_EQ(segs[1].a, Vec(R(34, 15), R(10, 3)));
  EXPECT_EQ(segs[1].b, Vec(R(38, 15), R(7, 3)));
  EXPECT_EQ(segs[1].hider.probs, (std::vector<Rational>{R(15, 19), R(4, 19)}));
  EXPECT_EQ(Frontier(TwoBox(), 4, 4).size(), 1u);
  EXPECT_THROW(Frontier(TwoBox(), 1, 0), ValidationError);
}

TEST(Frontier, RejectsUnsupportedGames) {
  EXPECT_THROW(Frontier(MakeGame({R(1), R(1)}, {R(1, 2), R(2, 3)}), 0, 0), UnsupportedGame);
  EXPECT_THROW(Frontier(MakeGame({R(1), R(1)}, {R(1, 2), R(1)}), 0, 0), UnsupportedGame);
  EXPECT_THROW(Frontier(MakeGame({R(1), R(1), R(1)}, {R(1, 2), R(1, 2), R(1, 2)}), 0, 0),
               UnsupportedGame);
  EXPECT_THROW(SolveTwoBox(MakeGame({R(1), R(1)}, {R(1, 2), R(2, 3)})), UnsupportedGame);
}

TEST(Frontier, StepGrid) {
  EXPECT_EQ(FrontierStep(TwoBox()), R(1, 2));
  // s = (3, 2): g^2 = 1 - q_1 and g^3 = 1 - q_2.
  EXPECT_EQ(FrontierStep(MakeGame({R(1), R(1)}, {R(3, 4), R(7, 8)})), R(1, 2));
  EXPECT_EQ(FrontierStep(MakeGame({R(1), R(1)}, {R(5, 9), R(19, 27)})), R(2, 3));
}

std::vector<GameSpec> AlignedTwoBoxGames(std::mt19937_64& gen) {
  const std::vector<std::pair<Rational, Rational>> qs{
      {R(1, 2), R(15, 16)}, {R(3, 4), R(7, 8)}, {R(5, 9), R(19, 27)}, {R(1, 3), R(5, 9)},
      {R(15, 16), R(3, 4)}, {R(1, 2), R(1, 2)}, {R(7, 8), R(1, 2)},   {R(19, 27), R(1, 3)}};
  std::vector<GameSpec> out;
  for (const auto& [q1, q2] : qs) {
    out.push_back(MakeGame({R(1), R(1)}, {q1, q2}));
    out.push_back(MakeGame(testing::RandomTimes(gen, 2, 5), {q1, q2}));
  }
  return out;
}

// Along increasing r the endpoints move up-left; neighbours share one.
TEST(Frontier, MonotoneAndConnected) {
  std::mt19937_64 gen(59);
  for (const auto& g : AlignedTwoBoxGames(gen)) {
    const auto segs = Frontier(g, -4, 4);
    for (size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      EXPECT_NE(s.extreme_a, s.extreme_b) << SaveGame(g) << " r=" << s.r;
      EXPECT_EQ(ExpectedSearchTime(g, s.hider, s.extreme_a),
                ExpectedSearchTime(g, s.hider, s.extreme_b));
      EXPECT_LT(s.a[0], s.b[0]);
      EXPECT_GT(s.a[1], s.b[1]);
      if (i + 1 < segs.size()) {
        EXPECT_EQ(s.a, segs[i + 1].b) << SaveGame(g) << " r=" << s.r;
      }
    }
  }
}

TEST(Frontier, SymmetricGameIsSymmetric) {
  const GameSpec g = MakeGame({R(1), R(1)}, {R(1, 3), R(1, 3)});
  const auto segs = Frontier(g, -3, 3);
  for (size_t i = 0; i < segs.size(); ++i) {
    const auto& mirror = segs[segs.size() - 1 - i];
    EXPECT_EQ(segs[i].a[0], mirror.b[1]);
    EXPECT_EQ(segs[i].a[1], mirror.b[0]);
  }
}

TEST(Diagonal, Straddling) {
  const auto segs = Frontier(TwoBox(), 0, 1);
  EXPECT_FALSE(StraddlesDiagonal(segs[0]));
  EXPECT_TRUE(StraddlesDiagonal(segs[1]));
  FrontierSegment touch;
  touch.a = Vec(R(2), R(2));
  touch.b = Vec(R(3), R(1));
  EXPECT_TRUE(StraddlesDiagonal(touch));
  touch.b = {ExtRational(R(3)), ExtRational::Infinity()};
  EXPECT_THROW(StraddlesDiagonal(touch), ValidationError);
}

TEST(Diagonal, MixtureWeight) {
  EXPECT_EQ(MixtureWeight(Vec(R(38, 15), R(7, 3)), Vec(R(34, 15), R(10, 3))), R(16, 19));
  EXPECT_EQ(MixtureWeight(Vec(R(2), R(2)), Vec(R(1), R(5))), R(1));
  EXPECT_EQ(MixtureWeight(Vec(R(1), R(3)), Vec(R(3), R(1))), R(1, 2));
  EXPECT_EQ(MixtureWeight(Vec(R(2), R(2)), Vec(R(3), R(3))), R(1));
  EXPECT_THROW(MixtureWeight(Vec(R(2), R(1)), Vec(R(3), R(2))), Error);
  EXPECT_THROW(MixtureWeight(Vec(R(2), R(1)), Vec(R(4), R(1))), Error);
}

TEST(SolveTwoBox, WorkedExample) {
  const SolveResult r = SolveTwoBox(TwoBox());
  EXPECT_EQ(r.value, R(142, 57));
  EXPECT_EQ(r.hider.probs, (std::vector<Rational>{R(15, 19), R(4, 19)}));
  ASSERT_EQ(r.searcher.atoms.size(), 2u);
  EXPECT_EQ(r.searcher.atoms[0].seq, Xi1());
  EXPECT_EQ(r.searcher.atoms[0].weight, R(16, 19));
  EXPECT_TRUE(SameSearch(r.searcher.atoms[1].seq, FromOneBased({1}, {1, 2, 1, 1, 1})));
  EXPECT_EQ(r.searcher.atoms[1].weight, R(3, 19));
  EXPECT_EQ(R(15, 19) * R(38, 15) + R(4, 19) * R(7, 3), r.value);
}

TEST(SolveTwoBox, EqualDetectionMatchesClosedForm) {
  std::mt19937_64 gen(61);
  for (const Rational& q : {R(1, 2), R(1, 3), R(4, 5)}) {
    const GameSpec g = MakeGame(testing::RandomTimes(gen, 2, 7), {q, q});
    const SolveResult r = SolveTwoBox(g);
    EXPECT_EQ(r.value, SolveEqualProbs(g).value);
    EXPECT_EQ(r.hider.probs, EqualizingHider(g).probs);
  }
}

TEST(SolveTwoBox, SmallestGeometricPair) {
  const GameSpec g = MakeGame({R(1), R(1)}, {R(15, 16), R(3, 4)});
  EXPECT_EQ(SolveTwoBox(g).hider.probs, EqualizingHider(g).probs);
}

// p* is returned exactly when the r = 0 segment meets the diagonal.
TEST(SolveTwoBox, EqualizingIffZeroSegmentStraddles) {
  std::mt19937_64 gen(67);
  for (const auto& g : AlignedTwoBoxGames(gen)) {
    const bool straddles = StraddlesDiagonal(MakeSegment(g, FrontierStep(g), 0));
    EXPECT_EQ(SolveTwoBox(g).hider.probs == EqualizingHider(g).probs, straddles) << SaveGame(g);
  }
}

TEST(SolveTwoBox, CertificatePasses) {
  std::mt19937_64 gen(71);
  for (const auto& g : AlignedTwoBoxGames(gen)) {
    const SolveResult r = SolveTwoBox(g);
    const CertificateReport rep = CheckCertificate(g, r);
    EXPECT_TRUE(rep.pass()) << SaveGame(g) << rep.ToJson().dump();
  }
}

TEST(SolveTwoBox, ReportsExhaustedRange) {
  TwoBoxOptions opts;
  opts.r_bound = 0;
  EXPECT_THROW(SolveTwoBox(TwoBox(), opts), LimitExceeded);
}

TEST(Export, Csv) {
  const auto segs = Frontier(TwoBox(), 0, 1);
  EXPECT_EQ(FrontierCsv(segs),
            "r,T1_a,T2_a,T1_b,T2_b\n0,38/15,7/3,46/15,4/3\n1,34/15,10/3,38/15,7/3\n");
  EXPECT_EQ(FrontierCsv({segs[0]}, 2), "r,T1_a,T2_a,T1_b,T2_b\n0,2.53,2.33,3.07,1.33\n");
}

TEST(Export, Svg) {
  const std::string svg = FrontierSvg(Frontier(TwoBox(), -1, 2));
  EXPECT_NE(svg.find("viewBox=\"0 0 400 400\""), std::string::npos);
  EXPECT_NE(svg.find("<line"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(svg, FrontierSvg(Frontier(TwoBox(), -1, 2)));
  EXPECT_THROW(FrontierSvg({}), ValidationError);
}

}  // namespace
}  // namespace boxsearch
