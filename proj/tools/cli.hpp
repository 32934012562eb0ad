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

#ifndef BOXSEARCH_TOOLS_CLI_HPP_
#define BOXSEARCH_TOOLS_CLI_HPP_

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boxsearch/boxsearch.hpp"

namespace boxsearch::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,      // unsupported game, size limit, I/O
  kBadInput = 2,     // unparsable or invalid input, bad flags
  kUnsolved = 3,     // no solver covers the regime; bounds printed
  kCheckFailed = 4,  // certificate rejected the candidate
};

// Outcome of regime dispatch.
struct Solution {
  enum class Regime { kClosedForm, kTwoBox, kMultiTarget, kUnsolved };
  Regime regime = Regime::kUnsolved;
  std::optional<SolveResult> single;
  std::optional<SubsetDistribution> multi;
  Rational value;
  // Unsolved regime: the equalizing Hider and inf_xi u(p*, xi).
  std::optional<HiderStrategy> equalizing;
  std::optional<ValueBounds> bounds;
  std::string reason;
};

inline const char* RegimeName(Solution::Regime r) {
  switch (r) {
    case Solution::Regime::kClosedForm:
      return "closed-form";
    case Solution::Regime::kTwoBox:
      return "two-box";
    case Solution::Regime::kMultiTarget:
      return "multi-target";
    case Solution::Regime::kUnsolved:
      break;
  }
  return "unsolved";
}

struct SolveOptions {
  RotationVariant variant = RotationVariant::kFixed;
  TwoBoxOptions two_box;
};

// k > 1: multi-target; common q: closed form; two aligned imperfect boxes:
// frontier search; anything else is reported as unsolved.
inline Solution Solve(const GameSpec& game, const SolveOptions& opts = {}) {
  RequireValid(game);
  Solution s;
  if (game.num_targets > 1) {
    if (!game.perfect_detection()) {
      s.reason = "several targets with imperfect detection";
      return s;
    }
    s.regime = Solution::Regime::kMultiTarget;
    s.multi = HiderMulti(game);
    s.value = ValueMulti(game);
    return s;
  }
  if (game.equal_detection()) {
    s.regime = Solution::Regime::kClosedForm;
    s.single = SolveEqualProbs(game, opts.variant);
    s.value = s.single->value;
    return s;
  }
  if (game.size() == 2 && game.detection(0) < 1 && game.detection(1) < 1 &&
      DetectAlignment(game, opts.two_box.best_response.exponent_bound)) {
    s.regime = Solution::Regime::kTwoBox;
    s.single = SolveTwoBox(game, opts.two_box);
    s.value = s.single->value;
    return s;
  }
  s.reason = "unequal detection probabilities outside the two-box aligned case";
  s.equalizing = EqualizingHider(game);
  s.bounds = BestResponseValue(game, *s.equalizing, opts.two_box.best_response);
  return s;
}

namespace internal {

class Formatter {
 public:
  static constexpr size_t kMaxExactChars = 120;

  explicit Formatter(int digits) : digits_(digits) {}
  std::string operator()(const Rational& r) const {
    return digits_ < 0 ? ToString(r) : ToDecimal(r, digits_);
  }
  std::string operator()(const ExtRational& r) const {
    return digits_ < 0 ? r.str() : r.decimal(digits_);
  }
  std::string operator()(double x) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits_ < 0 ? 6 : digits_) << x;
    return os.str();
  }
  // Exact unless the numbers are too long to read, then a marked decimal.
  std::string Brief(const ExtRational& r) const {
    std::string s = (*this)(r);
    if (digits_ < 0 && s.size() > kMaxExactChars) s = "~" + r.decimal(12);
    return s;
  }
  template <class T>
  std::string Join(const std::vector<T>& xs) const {
    std::string out;
    for (const auto& x : xs) out += (out.empty() ? "" : " ") + (*this)(x);
    return out;
  }

 private:
  int digits_;
};

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error("cannot write " + path);
}

inline std::string SubsetString(const Subset& h) {
  std::string s = "{";
  for (size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i] + 1);
  return s + "}";
}

inline Json SubsetTable(const SubsetDistribution& d) {
  Json rows = Json::array();
  for (const auto& [h, p] : d.Enumerate()) {
    Json idx = Json::array();
    for (size_t j : h) idx.push_back(j + 1);
    rows.push_back({{"subset", idx}, {"prob", ToString(p)}});
  }
  return rows;
}

// "equalizing", "uniform", or comma-separated nonnegative weights.
inline HiderStrategy ParseHider(const std::string& text, const GameSpec& game) {
  if (text == "equalizing") return EqualizingHider(game);
  if (text == "uniform") return Uniform(game.size());
  std::vector<Rational> w;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) w.push_back(ParseRational(item));
  if (w.size() != game.size()) {
    throw ParseError("prior has " + std::to_string(w.size()) + " entries, game has " +
                     std::to_string(game.size()) + " boxes");
  }
  return Normalized(std::move(w));
}

// "SEQ" or "SEQ:W;SEQ:W;..." with 1-based sequence notation.
inline MixedSearcher ParseSearcher(const std::string& text, const GameSpec& game) {
  MixedSearcher m;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      m.atoms.push_back({ParseSequence(item), Rational(1)});
    } else {
      m.atoms.push_back(
          {ParseSequence(item.substr(0, colon)), ParseRational(item.substr(colon + 1))});
    }
  }
  if (m.atoms.empty()) throw ParseError("empty searcher");
  CheckSearcher(m, game.size());
  return m;
}

inline TieBreakRule ParseTieBreak(const std::string& text, size_t n) {
  if (text == "lowest") return LowestIndex{};
  if (text == "all") return AllExtremes{};
  if (text.rfind("prefer:", 0) == 0) {
    const Rational b = ParseRational(text.substr(7));
    if (b.get_den() != 1 || b < 1 || b > static_cast<long>(n)) {
      throw ParseError("tie-break box out of range: " + text.substr(7));
    }
    return PreferBox{static_cast<size_t>(b.get_num().get_ui() - 1)};
  }
  throw ParseError("tie-break must be lowest, all or prefer:J");
}

inline CertificateReport Certify(const GameSpec& game, const Solution& s, const SolveOptions& o) {
  if (s.single) return CheckCertificate(game, *s.single, o.two_box.best_response);
  return CheckMultiCertificate(game, s.value, *s.multi, MultiSearcher(*s.multi));
}

inline std::string CertificateStatus(const GameSpec& game, const Solution& s,
                                     const SolveOptions& o) {
  if (s.multi && game.size() > MultiSearcher::kMaxExpandBoxes) return "SKIPPED (n > 8)";
  return Certify(game, s, o).pass() ? "PASS" : "FAIL";
}

inline void PrintUnsolved(std::ostream& out, const Solution& s, const Formatter& f) {
  out << "regime: unsolved (" << s.reason << ")\n";
  if (!s.bounds) return;
  out << "equalizing hider: " << f.Join(s.equalizing->probs) << "\n";
  out << "best response value against it: ";
  if (s.bounds->exact()) {
    out << f.Brief(s.bounds->lower) << "\n";
  } else {
    out << "[" << f.Brief(s.bounds->lower) << ", " << f.Brief(s.bounds->upper) << "]\n";
  }
  out << "value lower bound: " << f.Brief(s.bounds->lower) << "\n";
}

}  // namespace internal

// Runs one command line; `args` excludes the program name.
inline int RunCli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solver for search games in boxes", "boxsearch"};
  app.require_subcommand(1);
  int digits = -1;
  app.add_option("--decimal", digits, "Render numbers as decimals with N places")
      ->check(CLI::Range(0, 200));

  std::string game_path;
  auto add_game = [&](CLI::App* sub) {
    sub->add_option("game", game_path, "Game file (JSON)")->required();
  };

  auto* solve = app.add_subcommand("solve", "Value, optimal strategies and certificate status");
  add_game(solve);
  bool json = false, per_round = false;
  long r_bound = 1000;
  solve->add_flag("--json", json, "Emit JSON (accepted by `check`)");
  solve->add_flag("--per-round", per_round, "Redraw the rotation every round (common q)");
  solve->add_option("--r-bound", r_bound, "Two-box frontier search range")
      ->check(CLI::PositiveNumber);

  auto* value = app.add_subcommand("value", "Print only the game value");
  add_game(value);
  value->add_option("--r-bound", r_bound, "Two-box frontier search range")
      ->check(CLI::PositiveNumber);

  auto* best = app.add_subcommand("best-response", "Index-rule best response to a prior");
  add_game(best);
  std::string prior = "equalizing", tie_break = "lowest";
  size_t horizon = 0;
  best->add_option("--prior", prior, "equalizing, uniform, or weights w1,w2,...");
  best->add_option("--tie-break", tie_break, "lowest, all, or prefer:J");
  best->add_option("--horizon", horizon, "Look budget before truncation (0: default)");

  auto* frontier = app.add_subcommand("frontier", "Two-box best response frontier");
  add_game(frontier);
  long r_min = 0, r_max = 1;
  std::string csv_path, svg_path;
  frontier->add_option("--r-min", r_min, "First segment index");
  frontier->add_option("--r-max", r_max, "Last segment index");
  frontier->add_option("--csv", csv_path, "Write CSV here (default: stdout)");
  frontier->add_option("--svg", svg_path, "Write SVG here");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo play");
  add_game(simulate);
  std::string hider_text = "optimal", searcher_text = "optimal";
  MonteCarloOptions mc;
  size_t draws = 0;
  simulate->add_option("--hider", hider_text, "optimal, equalizing, uniform, or weights");
  simulate->add_option("--searcher", searcher_text, "optimal, or SEQ[:W][;SEQ:W...]");
  simulate->add_option("--trials", mc.trials, "Number of plays")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", mc.seed, "64-bit seed");
  simulate->add_option("--threads", mc.threads, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--look-cap", mc.look_cap, "Per-play look cap")->check(CLI::PositiveNumber);
  simulate->add_option("--draw", draws, "Multi-target: also print N sampled Hider subsets");

  auto* check = app.add_subcommand("check", "Verify a solution with the optimality certificate");
  add_game(check);
  std::string solution_path;
  check->add_option("solution", solution_path, "Solution JSON (default: the solver's own)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  const internal::Formatter fmt(digits);
  SolveOptions so;
  so.variant = per_round ? RotationVariant::kPerRound : RotationVariant::kFixed;
  so.two_box.r_bound = r_bound;

  try {
    const GameSpec game = LoadGame(internal::ReadFile(game_path));

    if (solve->parsed() || value->parsed()) {
      const Solution s = Solve(game, so);
      if (value->parsed()) {
        if (s.regime == Solution::Regime::kUnsolved) {
          internal::PrintUnsolved(out, s, fmt);
          return kUnsolved;
        }
        out << fmt(s.value) << "\n";
        return kOk;
      }
      if (json) {
        Json j;
        j["regime"] = RegimeName(s.regime);
        if (s.regime == Solution::Regime::kUnsolved) {
          j["reason"] = s.reason;
          if (s.bounds) {
            Json h = Json::array();
            for (const auto& p : s.equalizing->probs) h.push_back(ToString(p));
            j["equalizing_hider"] = h;
            j["lower"] = s.bounds->lower.str();
            j["upper"] = s.bounds->upper.str();
          }
          out << j.dump(2) << "\n";
          return kUnsolved;
        }
        if (s.single) {
          const Json sol = SolutionToJson(*s.single);
          for (const auto& [k, v] : sol.items()) j[k] = v;
        } else {
          j["value"] = ToString(s.value);
          j["targets"] = game.num_targets;
          j["hider"] = internal::SubsetTable(*s.multi);
          j["searcher"] = "search the drawn subset in ascending order, then the rest uniformly";
        }
        j["certificate"] = internal::CertificateStatus(game, s, so);
        out << j.dump(2) << "\n";
        return kOk;
      }
      if (s.regime == Solution::Regime::kUnsolved) {
        internal::PrintUnsolved(out, s, fmt);
        return kUnsolved;
      }
      out << "regime: " << RegimeName(s.regime) << "\n";
      out << "value: " << fmt(s.value) << "\n";
      if (s.single) {
        out << "hider: " << fmt.Join(s.single->hider.probs) << "\n";
        out << "searcher" << (s.single->per_round ? " (redrawn each round)" : "") << ":\n";
        for (const auto& a : s.single->searcher.atoms) {
          out << "  " << fmt(a.weight) << " " << Format(a.seq) << "\n";
        }
      } else {
        out << "hider (" << game.num_targets << "-subsets):\n";
        for (const auto& [h, p] : s.multi->Enumerate()) {
          out << "  " << internal::SubsetString(h) << " " << fmt(p) << "\n";
        }
        out << "searcher: draw a subset from the hider table, search it in ascending order, "
               "then the rest in uniformly random order\n";
      }
      out << "certificate: " << internal::CertificateStatus(game, s, so) << "\n";
      return kOk;
    }

    if (best->parsed()) {
      const HiderStrategy p = internal::ParseHider(prior, game);
      BestResponseOptions bo;
      bo.horizon = horizon;
      const auto rule = internal::ParseTieBreak(tie_break, game.size());
      for (const auto& br : BestResponses(game, p, rule, bo)) {
        out << "sequence: " << Format(br.seq) << "\n";
        if (br.truncated) {
          out << "truncated: yes\n";
        } else {
          out << "performance: " << fmt.Join(Performance(game, br.seq)) << "\n";
        }
      }
      const ValueBounds v = BestResponseValue(game, p, bo);
      if (v.exact()) {
        out << "value: " << fmt(v.lower) << "\n";
      } else {
        out << "value: [" << fmt.Brief(v.lower) << ", " << fmt.Brief(v.upper) << "]\n";
      }
      return kOk;
    }

    if (frontier->parsed()) {
      if (r_max < r_min) throw ParseError("--r-max is below --r-min");
      const auto segs = Frontier(game, r_min, r_max);
      const std::string csv = FrontierCsv(segs, digits);
      if (csv_path.empty()) {
        out << csv;
      } else {
        internal::WriteFile(csv_path, csv);
      }
      if (!svg_path.empty()) internal::WriteFile(svg_path, FrontierSvg(segs));
      return kOk;
    }

    if (simulate->parsed()) {
      MonteCarloReport rep;
      std::optional<Rational> exact;
      if (game.num_targets > 1) {
        if (hider_text != "optimal" || searcher_text != "optimal") {
          throw UnsupportedGame("multi-target simulation uses the optimal strategies only");
        }
        const SubsetDistribution nu = HiderMulti(game);
        const SubsetSampler sampler(nu);
        Engine gen(MixSeed(mc.seed, ~std::uint64_t{0}));
        for (size_t i = 0; i < draws; ++i)
          out << "draw: " << internal::SubsetString(sampler(gen)) << "\n";
        rep = SimulateMulti(game, nu, MultiSearcher(nu), mc);
        exact = ValueMulti(game);
      } else {
        std::optional<Solution> s;
        if (hider_text == "optimal" || searcher_text == "optimal") {
          s = Solve(game, so);
          if (!s->single) throw UnsupportedGame("no optimal strategies known for this game");
        }
        const HiderStrategy p =
            hider_text == "optimal" ? s->single->hider : internal::ParseHider(hider_text, game);
        if (searcher_text == "optimal") {
          rep = s->single->per_round ? SimulatePerRound(game, p, s->single->searcher, mc)
                                     : Simulate(game, p, s->single->searcher, mc);
          if (hider_text == "optimal") exact = s->value;
        } else {
          rep = Simulate(game, p, internal::ParseSearcher(searcher_text, game), mc);
        }
      }
      out << "mean: " << fmt(rep.mean) << "\n";
      out << "stderr: " << fmt(rep.std_error) << "\n";
      out << "trials: " << rep.trials << "\n";
      out << "overflow: " << rep.overflow << "\n";
      if (exact) {
        out << "exact: " << fmt(*exact) << "\n";
        out << "within 3 stderr: " << (rep.within(exact->get_d()) ? "yes" : "no") << "\n";
      }
      return kOk;
    }

    if (check->parsed()) {
      CertificateReport rep;
      if (solution_path.empty()) {
        const Solution s = Solve(game, so);
        if (s.regime == Solution::Regime::kUnsolved) {
          internal::PrintUnsolved(out, s, fmt);
          return kUnsolved;
        }
        rep = internal::Certify(game, s, so);
      } else {
        rep = CheckCertificate(game, SolutionFromJson(internal::ReadFile(solution_path)));
      }
      out << rep.ToJson().dump(2) << "\n";
      return rep.pass() ? kOk : kCheckFailed;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace boxsearch::cli

#endif  // BOXSEARCH_TOOLS_CLI_HPP_
