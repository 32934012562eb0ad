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

#ifndef BOXSEARCH_IO_HPP_
#define BOXSEARCH_IO_HPP_

#include <set>
#include <string>
#include <string_view>

#include "boxsearch/error.hpp"
#include "boxsearch/evaluate.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/sequence.hpp"
#include "boxsearch/solution.hpp"
#include "json.hpp"

namespace boxsearch {

using Json = nlohmann::ordered_json;

namespace internal {

inline void RejectUnknownKeys(const Json& obj, const std::set<std::string>& allowed,
                              const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

inline Rational RationalField(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + " is missing \"" + key + "\"");
  const Json& v = obj.at(key);
  if (!v.is_string()) throw ParseError(where + "." + key + " must be a rational string");
  return ParseRational(v.get<std::string>());
}

inline Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::vector<size_t> IndexArray(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + " must be an array");
  std::vector<size_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 1) {
      throw ParseError(where + " entries must be 1-based box indices");
    }
    out.push_back(static_cast<size_t>(x.get<long long>() - 1));
  }
  return out;
}

}  // namespace internal

// Game file: {"boxes":[{"t":"1","q":"1/2"},...],"targets":1}. "targets" is
// optional (default 1); unknown keys are rejected; the result is validated.
inline GameSpec LoadGame(std::string_view text) {
  const Json doc = internal::ParseJson(text);
  internal::RejectUnknownKeys(doc, {"boxes", "targets"}, "game");
  if (!doc.contains("boxes") || !doc.at("boxes").is_array()) {
    throw ParseError("game needs a \"boxes\" array");
  }
  GameSpec game;
  size_t idx = 0;
  for (const auto& b : doc.at("boxes")) {
    const std::string where = "boxes[" + std::to_string(idx++) + "]";
    internal::RejectUnknownKeys(b, {"t", "q"}, where);
    game.boxes.push_back(
        {internal::RationalField(b, "t", where), internal::RationalField(b, "q", where)});
  }
  if (doc.contains("targets")) {
    const Json& k = doc.at("targets");
    if (!k.is_number_integer()) throw ParseError("\"targets\" must be an integer");
    game.num_targets = k.get<int>();
  }
  RequireValid(game);
  return game;
}

inline std::string SaveGame(const GameSpec& game) {
  Json doc;
  doc["boxes"] = Json::array();
  for (const auto& b : game.boxes) {
    doc["boxes"].push_back({{"t", ToString(b.search_time)}, {"q", ToString(b.detection_prob)}});
  }
  doc["targets"] = game.num_targets;
  return doc.dump() + "\n";
}

inline Json SequenceToJson(const SearchSequence& s) {
  Json j;
  j["prefix"] = Json::array();
  j["cycle"] = Json::array();
  for (size_t b : s.prefix) j["prefix"].push_back(b + 1);
  for (size_t b : s.cycle) j["cycle"].push_back(b + 1);
  return j;
}

inline SearchSequence SequenceFromJson(const Json& j) {
  internal::RejectUnknownKeys(j, {"prefix", "cycle", "weight"}, "sequence");
  SearchSequence s;
  if (j.contains("prefix")) s.prefix = internal::IndexArray(j.at("prefix"), "prefix");
  if (j.contains("cycle")) s.cycle = internal::IndexArray(j.at("cycle"), "cycle");
  if (s.prefix.empty() && s.cycle.empty()) throw ParseError("empty sequence");
  return s;
}

// {"value":..,"hider":[..],"searcher":[{"prefix":[..],"cycle":[..],"weight":..}],
//  "per_round":false}
inline Json SolutionToJson(const SolveResult& r) {
  Json j;
  j["value"] = ToString(r.value);
  j["hider"] = Json::array();
  for (const auto& p : r.hider.probs) j["hider"].push_back(ToString(p));
  j["searcher"] = Json::array();
  for (const auto& a : r.searcher.atoms) {
    Json atom = SequenceToJson(a.seq);
    atom["weight"] = ToString(a.weight);
    j["searcher"].push_back(std::move(atom));
  }
  j["per_round"] = r.per_round;
  return j;
}

inline SolveResult SolutionFromJson(std::string_view text) {
  const Json doc = internal::ParseJson(text);
  // "regime" and "certificate" are annotations written by the CLI.
  internal::RejectUnknownKeys(
      doc, {"value", "hider", "searcher", "per_round", "regime", "certificate"}, "solution");
  SolveResult r;
  r.value = internal::RationalField(doc, "value", "solution");
  if (!doc.contains("hider") || !doc.at("hider").is_array())
    throw ParseError("solution needs a \"hider\" array");
  for (const auto& p : doc.at("hider")) {
    if (!p.is_string()) throw ParseError("hider entries must be rational strings");
    r.hider.probs.push_back(ParseRational(p.get<std::string>()));
  }
  if (!doc.contains("searcher") || !doc.at("searcher").is_array()) {
    throw ParseError("solution needs a \"searcher\" array");
  }
  for (const auto& a : doc.at("searcher")) {
    r.searcher.atoms.push_back(
        {SequenceFromJson(a), internal::RationalField(a, "weight", "searcher atom")});
  }
  if (doc.contains("per_round")) {
    if (!doc.at("per_round").is_boolean()) throw ParseError("\"per_round\" must be a boolean");
    r.per_round = doc.at("per_round").get<bool>();
  }
  return r;
}

}  // namespace boxsearch

#endif  // BOXSEARCH_IO_HPP_
