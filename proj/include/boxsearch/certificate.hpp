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

#ifndef BOXSEARCH_CERTIFICATE_HPP_
#define BOXSEARCH_CERTIFICATE_HPP_

#include <numeric>
#include <string>
#include <vector>

#include "boxsearch/best_response.hpp"
#include "boxsearch/closed_form.hpp"
#include "boxsearch/error.hpp"
#include "boxsearch/evaluate.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/multi_target.hpp"
#include "boxsearch/solution.hpp"
#include "json.hpp"

namespace boxsearch {

// One optimality condition with its exact per-item deviations. The
// condition holds iff every residual is exactly zero.
struct ConditionCheck {
  std::string name;
  std::vector<ExtRational> residuals;

  bool pass() const {
    for (const auto& r : residuals) {
      if (!(r == ExtRational(0))) return false;
    }
    return true;
  }
};

struct CertificateReport {
  Rational value;
  std::vector<ConditionCheck> conditions;

  bool pass() const {
    for (const auto& c : conditions) {
      if (!c.pass()) return false;
    }
    return true;
  }

  nlohmann::json ToJson() const {
    nlohmann::json j;
    j["value"] = ToString(value);
    j["pass"] = pass();
    j["conditions"] = nlohmann::json::array();
    for (const auto& c : conditions) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& x : c.residuals) r.push_back(x.str());
      j["conditions"].push_back({{"name", c.name}, {"pass", c.pass()}, {"residuals", r}});
    }
    return j;
  }
};

namespace internal {

// |a - b| as an extended rational; infinite when either side is.
inline ExtRational Deviation(const ExtRational& a, const Rational& b) {
  if (a.is_infinite()) return ExtRational::Infinity();
  return Rational(abs(a.value() - b));
}

}  // namespace internal

// Checks the three optimality conditions for a claimed single-target
// solution:
//   (i)   every Searcher atom is a best response to the Hider strategy;
//   (ii)  the Hider strategy has full support;
//   (iii) every pure hiding box pays exactly the claimed value.
// Residuals: (i) u(p, atom) - inf_xi u(p, xi); (ii) 1 for each box with
// p_j = 0; (iii) |u(j, theta) - V|.
inline CertificateReport CheckCertificate(const GameSpec& game, const SolveResult& claim,
                                          const BestResponseOptions& opts = {}) {
  RequireValid(game);
  if (game.num_targets != 1)
    throw UnsupportedGame("single-target certificate on a multi-target game");
  CheckHider(claim.hider, game.size());
  CheckSearcher(claim.searcher, game.size());

  CertificateReport rep;
  rep.value = claim.value;

  const ValueBounds br = BestResponseValue(game, claim.hider, opts);
  if (!br.exact() || br.lower.is_infinite()) {
    throw UnsupportedGame("best response value is not exactly evaluable for this Hider strategy");
  }
  ConditionCheck support_opt{"best_response_support", {}};
  for (const auto& a : claim.searcher.atoms) {
    const ExtRational u = ExpectedSearchTime(game, claim.hider, a.seq);
    support_opt.residuals.push_back(internal::Deviation(u, br.lower.value()));
  }
  rep.conditions.push_back(std::move(support_opt));

  ConditionCheck full{"hider_full_support", {}};
  for (const auto& p : claim.hider.probs) full.residuals.push_back(ExtRational(p > 0 ? 0 : 1));
  rep.conditions.push_back(std::move(full));

  ConditionCheck eq{"equalized_payoffs", {}};
  for (size_t j = 0; j < game.size(); ++j) {
    const ExtRational u = claim.per_round ? ExtRational(PerRoundPayoff(game, claim.searcher, j))
                                          : PayoffAgainstBox(game, j, claim.searcher);
    eq.residuals.push_back(internal::Deviation(u, claim.value));
  }
  rep.conditions.push_back(std::move(eq));
  return rep;
}

// Multi-target analogue over k-subsets. The best-response value against
// the Hider is found by enumerating every permutation, so n <= 8.
inline CertificateReport CheckMultiCertificate(const GameSpec& game, const Rational& value,
                                               const SubsetDistribution& hider,
                                               const MultiSearcher& searcher) {
  RequireValid(game);
  if (!game.perfect_detection()) throw UnsupportedGame("multi-target certificate needs q=1");
  if (game.size() > MultiSearcher::kMaxExpandBoxes) {
    throw LimitExceeded("multi-target certificate is limited to n <= 8");
  }
  const auto subsets = hider.Enumerate();
  auto payoff_vs_hider = [&](const std::vector<size_t>& order) {
    Rational u = 0;
    for (const auto& [h, p] : subsets) u += p * CompletionTime(game, h, order);
    return u;
  };

  std::vector<size_t> order(game.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rational best = payoff_vs_hider(order);
  while (std::next_permutation(order.begin(), order.end()))
    best = std::min(best, payoff_vs_hider(order));

  CertificateReport rep;
  rep.value = value;
  const auto atoms = searcher.Expand();
  ConditionCheck support_opt{"best_response_support", {}};
  for (const auto& a : atoms)
    support_opt.residuals.push_back(Rational(payoff_vs_hider(a.order) - best));
  rep.conditions.push_back(std::move(support_opt));

  ConditionCheck full{"hider_full_support", {}};
  for (const auto& [h, p] : subsets) full.residuals.push_back(ExtRational(p > 0 ? 0 : 1));
  rep.conditions.push_back(std::move(full));

  ConditionCheck eq{"equalized_payoffs", {}};
  for (const auto& [h, p] : subsets) {
    Rational u = 0;
    for (const auto& a : atoms) u += a.weight * CompletionTime(game, h, a.order);
    eq.residuals.push_back(Rational(abs(u - value)));
  }
  rep.conditions.push_back(std::move(eq));
  return rep;
}

}  // namespace boxsearch

#endif  // BOXSEARCH_CERTIFICATE_HPP_
