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

#include <gtest/gtest.h>

#include <random>

#include "boxsearch/boxsearch.hpp"
#include "oracles.hpp"

namespace boxsearch {
namespace {

using testing::R;

GameSpec TwoBox() { return MakeGame({R(1), R(1)}, {R(1, 2), R(15, 16)}); }

using Matrix = std::vector<std::vector<Rational>>;

// Row strategy guarantees at least v against every column, the column
// strategy at most v against every row.
void ExpectOptimal(const Matrix& a, const MatrixGameSolution& s) {
  Rational rsum = 0, csum = 0;
  for (const auto& x : s.row_strategy) {
    EXPECT_GE(x, 0);
    rsum += x;
  }
  for (const auto& x : s.col_strategy) {
    EXPECT_GE(x, 0);
    csum += x;
  }
  EXPECT_EQ(rsum, 1);
  EXPECT_EQ(csum, 1);
  for (size_t c = 0; c < a[0].size(); ++c) {
    Rational u = 0;
    for (size_t r = 0; r < a.size(); ++r) u += s.row_strategy[r] * a[r][c];
    EXPECT_GE(u, s.value);
  }
  for (size_t r = 0; r < a.size(); ++r) {
    Rational u = 0;
    for (size_t c = 0; c < a[0].size(); ++c) u += s.col_strategy[c] * a[r][c];
    EXPECT_LE(u, s.value);
  }
}

TEST(MatrixGame, SmallGames) {
  const Matrix pennies{{R(1), R(-1)}, {R(-1), R(1)}};
  EXPECT_EQ(SolveMatrixGame(pennies).value, 0);
  ExpectOptimal(pennies, SolveMatrixGame(pennies));

  const Matrix rps{{R(0), R(-1), R(1)}, {R(1), R(0), R(-1)}, {R(-1), R(1), R(0)}};
  const auto s = SolveMatrixGame(rps);
  EXPECT_EQ(s.value, 0);
  EXPECT_EQ(s.row_strategy, (std::vector<Rational>{R(1, 3), R(1, 3), R(1, 3)}));

  const Matrix saddle{{R(3), R(5)}, {R(2), R(1)}};
  EXPECT_EQ(SolveMatrixGame(saddle).value, 3);

  const Matrix mixed{{R(7, 2), R(1)}, {R(2), R(4)}};
  EXPECT_EQ(SolveMatrixGame(mixed).value, testing::Value2x2(R(7, 2), R(1), R(2), R(4)));
  EXPECT_THROW(SolveMatrixGame({}), ValidationError);
}

TEST(MatrixGame, RandomGamesAreSolvedExactly) {
  std::mt19937_64 gen(109);
  std::uniform_int_distribution<long> entry(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 6;
    Matrix a(rows, std::vector<Rational>(cols));
    for (auto& row : a) {
      for (auto& x : row) x = MakeRational(entry(gen), 1 + trial % 3);
    }
    ExpectOptimal(a, SolveMatrixGame(a));
  }
}

TEST(FiniteGame, Examples) {
  EXPECT_EQ(LpSolveFinite(testing::Perfect({R(1), R(1)})).value, R(3, 2));
  EXPECT_EQ(testing::Value2x2(R(1), R(2), R(2), R(1)), R(3, 2));
  EXPECT_EQ(LpSolveFinite(testing::Perfect({R(1), R(2), R(3)}, 2)).value, R(60, 11));
  EXPECT_EQ(LpSolveFinite(testing::Perfect({R(7, 3)})).value, R(7, 3));
  EXPECT_THROW(LpSolveFinite(TwoBox()), UnsupportedGame);
  EXPECT_THROW(LpSolveFinite(testing::Perfect(std::vector<Rational>(8, R(1)))), LimitExceeded);
}

TEST(FiniteGame, AgreesWithClosedForms) {
  std::mt19937_64 gen(113);
  for (size_t n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 2; ++rep) {
      const auto t = testing::RandomTimes(gen, n, 9);
      EXPECT_EQ(LpSolveFinite(testing::Perfect(t)).value,
                SolveEqualProbs(testing::Perfect(t)).value);
      for (size_t k = 1; k <= n; ++k) {
        const GameSpec g = testing::Perfect(t, static_cast<int>(k));
        EXPECT_EQ(LpSolveFinite(g).value, ValueMulti(g));
      }
    }
  }
}

TEST(FiniteGame, SingleTargetView) {
  const auto sol = LpSolveFinite(testing::Perfect({R(1), R(2), R(3)}));
  const SolveResult r = sol.AsSolveResult(3);
  EXPECT_EQ(r.hider.probs, (std::vector<Rational>{R(1, 6), R(1, 3), R(1, 2)}));
  EXPECT_TRUE(CheckCertificate(testing::Perfect({R(1), R(2), R(3)}), r).pass());
  EXPECT_THROW(LpSolveFinite(testing::Perfect({R(1), R(2), R(3)}, 2)).AsSolveResult(3),
               UnsupportedGame);
}

TEST(Certificate, WorkedExamplePasses) {
  SolveResult claim;
  claim.value = R(142, 57);
  claim.hider = HiderStrategy{{R(15, 19), R(4, 19)}};
  claim.searcher.atoms = {{FromOneBased({}, {1, 2, 1, 1, 1}), R(16, 19)},
                          {FromOneBased({1}, {1, 2, 1, 1, 1}), R(3, 19)}};
  const CertificateReport rep = CheckCertificate(TwoBox(), claim);
  EXPECT_TRUE(rep.pass());
  for (const auto& c : rep.conditions) {
    for (const auto& r : c.residuals) EXPECT_EQ(r, ExtRational(0));
  }
  const auto j = rep.ToJson();
  EXPECT_EQ(j["value"], "142/57");
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["conditions"].size(), 3u);
  EXPECT_EQ(j["conditions"][2]["name"], "equalized_payoffs");
}

// No mixture of the two extremes equalizes against p*.
TEST(Certificate, EqualizingHiderFailsPayoffCondition) {
  const GameSpec g = TwoBox();
  for (const Rational& beta : {R(0), R(1, 4), R(1, 2), R(3, 4), R(1)}) {
    SolveResult claim;
    claim.hider = EqualizingHider(g);
    claim.value = R(170, 69);
    claim.searcher.atoms = {{FromOneBased({}, {1, 2, 1, 1, 1}), beta},
                            {FromOneBased({}, {2, 1, 1, 1, 1}), 1 - beta}};
    if (beta == 0) claim.searcher.atoms.erase(claim.searcher.atoms.begin());
    if (beta == 1) claim.searcher.atoms.pop_back();
    const CertificateReport rep = CheckCertificate(g, claim);
    EXPECT_TRUE(rep.conditions[0].pass());
    EXPECT_TRUE(rep.conditions[1].pass());
    EXPECT_FALSE(rep.conditions[2].pass());
    EXPECT_FALSE(rep.pass());
  }
  // Equalizing would need weight 26/23 on the first extreme.
  const Rational da = R(38, 15) - R(7, 3), db = R(46, 15) - R(4, 3);
  EXPECT_EQ(db / (db - da), R(26, 23));
  EXPECT_THROW(MixtureWeight({R(38, 15), R(7, 3)}, {R(46, 15), R(4, 3)}), Error);
}

TEST(Certificate, SingleBox) {
  SolveResult claim;
  claim.value = R(4);
  claim.hider = PointMass(1, 0);
  claim.searcher = MixedSearcher::Pure(Cyclic({0}));
  EXPECT_TRUE(CheckCertificate(MakeGame({R(2)}, {R(1, 2)}), claim).pass());
}

TEST(Certificate, DetectsEachFailure) {
  const GameSpec g = MakeGame({R(1), R(2)}, {R(1), R(1)});
  SolveResult good = SolveEqualProbs(g);
  ASSERT_TRUE(CheckCertificate(g, good).pass());

  SolveResult bad_atom = good;
  bad_atom.searcher = MixedSearcher::Pure(FromOneBased({2, 1}, {}));
  bad_atom.hider = HiderStrategy{{R(1, 2), R(1, 2)}};
  EXPECT_FALSE(CheckCertificate(g, bad_atom).conditions[0].pass());

  SolveResult support = good;
  support.hider = PointMass(2, 1);
  EXPECT_FALSE(CheckCertificate(g, support).conditions[1].pass());

  SolveResult value = good;
  value.value += R(1, 1000);
  const auto rep = CheckCertificate(g, value);
  EXPECT_FALSE(rep.conditions[2].pass());
  EXPECT_EQ(rep.conditions[2].residuals[0], ExtRational(R(1, 1000)));

  // An atom that never opens box 2 pays infinity there.
  SolveResult never = good;
  never.searcher = MixedSearcher::Pure(FromOneBased({1}, {}));
  const auto inf_rep = CheckCertificate(g, never);
  EXPECT_TRUE(inf_rep.conditions[2].residuals[1].is_infinite());
}

TEST(Certificate, UnalignedHiderIsNotEvaluable) {
  SolveResult claim;
  claim.value = R(3);
  claim.hider = Uniform(2);
  claim.searcher = MixedSearcher::Pure(Cyclic({0, 1}));
  EXPECT_THROW(CheckCertificate(MakeGame({R(1), R(1)}, {R(1, 2), R(2, 3)}), claim),
               UnsupportedGame);
}

TEST(Certificate, MultiTarget) {
  const GameSpec g = testing::Perfect({R(1), R(2), R(3)}, 2);
  EXPECT_TRUE(CheckMultiCertificate(g, R(60, 11), HiderMulti(g), SearcherMulti(g)).pass());
  EXPECT_FALSE(CheckMultiCertificate(g, R(5), HiderMulti(g), SearcherMulti(g)).pass());
  const GameSpec other = testing::Perfect({R(1), R(1), R(3)}, 2);
  EXPECT_FALSE(CheckMultiCertificate(g, R(60, 11), HiderMulti(other), SearcherMulti(other)).pass());
}

// Every solver output passes with zero residuals.
TEST(Certificate, Completeness) {
  std::mt19937_64 gen(127);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t n = 1 + trial % 6;
    const auto t = testing::RandomTimes(gen, n, 9);
    const Rational q = std::vector<Rational>{R(1), R(1, 2), R(3, 7)}[trial % 3];
    const GameSpec g = MakeGame(t, std::vector<Rational>(n, q));
    EXPECT_TRUE(CheckCertificate(g, SolveEqualProbs(g)).pass());
    EXPECT_TRUE(CheckCertificate(g, SolveEqualProbs(g, RotationVariant::kPerRound)).pass());
    const GameSpec m = testing::Perfect(t, 1 + trial % static_cast<int>(n));
    EXPECT_TRUE(CheckMultiCertificate(m, ValueMulti(m), HiderMulti(m), SearcherMulti(m)).pass());
  }
}

TEST(MonteCarlo, ClosedFormGame) {
  const SolveResult r = SolveEqualTimesProbs(3, R(1, 2));
  MonteCarloOptions opts;
  opts.seed = 1;
  const auto rep = Simulate(MakeGame({R(1), R(1), R(1)}, {R(1, 2), R(1, 2), R(1, 2)}), r.hider,
                            r.searcher, opts);
  EXPECT_EQ(rep.completed, 100000u);
  EXPECT_TRUE(rep.within(5.0)) << rep.mean << " +- " << rep.std_error;
}

TEST(MonteCarlo, SingleBoxIsDeterministic) {
  MonteCarloOptions opts;
  opts.trials = 1000;
  const auto rep = Simulate(MakeGame({R(3)}, {R(1)}), PointMass(1, 0),
                            MixedSearcher::Pure(FromOneBased({1}, {})), opts);
  EXPECT_EQ(rep.mean, 3.0);
  EXPECT_EQ(rep.std_error, 0.0);
}

TEST(MonteCarlo, TwoBoxOptimalPair) {
  const SolveResult r = SolveTwoBox(TwoBox());
  MonteCarloOptions opts;
  opts.seed = 2;
  EXPECT_TRUE(Simulate(TwoBox(), r.hider, r.searcher, opts).within((R(142, 57)).get_d()));
}

TEST(MonteCarlo, MultiTargetOptimalPair) {
  const GameSpec g = testing::Perfect({R(1), R(2), R(3)}, 2);
  MonteCarloOptions opts;
  opts.seed = 3;
  const auto rep = SimulateMulti(g, HiderMulti(g), SearcherMulti(g), opts);
  EXPECT_TRUE(rep.within(R(60, 11).get_d())) << rep.mean;
}

TEST(MonteCarlo, PerRoundVariant) {
  const GameSpec g = MakeGame({R(1), R(2), R(3)}, {R(1, 3), R(1, 3), R(1, 3)});
  const SolveResult r = SolveEqualProbs(g, RotationVariant::kPerRound);
  MonteCarloOptions opts;
  opts.seed = 4;
  EXPECT_TRUE(SimulatePerRound(g, r.hider, r.searcher, opts).within(r.value.get_d()));
}

// Same seed and trial count give identical reports for any thread count;
// different seeds differ.
TEST(MonteCarlo, ScheduleIndependent) {
  const SolveResult r = SolveTwoBox(TwoBox());
  MonteCarloOptions opts;
  opts.trials = 50000;
  opts.seed = 99;
  const auto base = Simulate(TwoBox(), r.hider, r.searcher, opts);
  for (unsigned th : {2u, 3u, 8u}) {
    opts.threads = th;
    const auto rep = Simulate(TwoBox(), r.hider, r.searcher, opts);
    EXPECT_EQ(rep.mean, base.mean);
    EXPECT_EQ(rep.std_error, base.std_error);
  }
  opts.seed = 100;
  EXPECT_NE(Simulate(TwoBox(), r.hider, r.searcher, opts).mean, base.mean);
  const GameSpec g = testing::Perfect({R(1), R(2), R(3), R(4)}, 2);
  opts.threads = 1;
  const auto m1 = SimulateMulti(g, HiderMulti(g), SearcherMulti(g), opts);
  opts.threads = 4;
  EXPECT_EQ(SimulateMulti(g, HiderMulti(g), SearcherMulti(g), opts).mean, m1.mean);
}

TEST(MonteCarlo, LookCapCountsOverflow) {
  const GameSpec g = MakeGame({R(1), R(1)}, {R(1, 100), R(1, 100)});
  MonteCarloOptions opts;
  opts.trials = 20000;
  opts.look_cap = 50;
  const auto rep = Simulate(g, Uniform(2), MixedSearcher::Pure(Cyclic({0, 1})), opts);
  EXPECT_GT(rep.overflow, 0u);
  EXPECT_EQ(rep.completed + rep.overflow, rep.trials);
}

TEST(MonteCarlo, RefusesUnboundedPayoff) {
  MonteCarloOptions opts;
  EXPECT_THROW(Simulate(TwoBox(), Uniform(2), MixedSearcher::Pure(Cyclic({0})), opts),
               UnsupportedGame);
  EXPECT_NO_THROW(Simulate(TwoBox(), PointMass(2, 0), MixedSearcher::Pure(Cyclic({0})), opts));
  opts.trials = 0;
  EXPECT_THROW(Simulate(TwoBox(), Uniform(2), MixedSearcher::Pure(Cyclic({0, 1})), opts),
               ValidationError);
}

TEST(Random, StreamsDiffer) {
  EXPECT_NE(MixSeed(1, 0), MixSeed(1, 1));
  EXPECT_NE(MixSeed(1, 0), MixSeed(2, 0));
  EXPECT_EQ(MixSeed(5, 7), MixSeed(5, 7));
}

}  // namespace
}  // namespace boxsearch
