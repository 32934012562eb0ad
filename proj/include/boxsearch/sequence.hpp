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

#ifndef BOXSEARCH_SEQUENCE_HPP_
#define BOXSEARCH_SEQUENCE_HPP_

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "boxsearch/error.hpp"

namespace boxsearch {

// An eventually periodic search: `prefix` once, then `cycle` forever. An
// empty cycle denotes the finite search `prefix`. Indices are 0-based.
struct SearchSequence {
  std::vector<size_t> prefix;
  std::vector<size_t> cycle;

  bool finite() const { return cycle.empty(); }

  // Look number `i` (0-based) of the unrolled sequence.
  size_t at(size_t i) const {
    if (i < prefix.size()) return prefix[i];
    if (cycle.empty()) throw Error("look index past the end of a finite sequence");
    return cycle[(i - prefix.size()) % cycle.size()];
  }

  friend bool operator==(const SearchSequence&, const SearchSequence&) = default;
  friend auto operator<=>(const SearchSequence&, const SearchSequence&) = default;
};

inline SearchSequence Cyclic(std::vector<size_t> cycle) { return {{}, std::move(cycle)}; }
inline SearchSequence Finite(std::vector<size_t> prefix) { return {std::move(prefix), {}}; }

// Builds a sequence from 1-based indices, as written in text.
inline SearchSequence FromOneBased(std::vector<size_t> prefix, std::vector<size_t> cycle) {
  for (auto* v : {&prefix, &cycle}) {
    for (auto& x : *v) {
      if (x == 0) throw Error("box indices are 1-based");
      --x;
    }
  }
  return {std::move(prefix), std::move(cycle)};
}

// Unique representation of the denoted infinite sequence: the cycle is
// reduced to its primitive period and the prefix to its shortest form. Two
// sequences denote the same search iff their canonical forms are equal.
inline SearchSequence Canonicalize(SearchSequence s) {
  if (s.cycle.empty()) return s;
  const size_t len = s.cycle.size();
  for (size_t period = 1; period < len; ++period) {
    if (len % period != 0) continue;
    bool ok = true;
    for (size_t i = period; i < len && ok; ++i) ok = s.cycle[i] == s.cycle[i - period];
    if (ok) {
      s.cycle.resize(period);
      break;
    }
  }
  while (!s.prefix.empty() && s.prefix.back() == s.cycle.back()) {
    s.prefix.pop_back();
    std::rotate(s.cycle.rbegin(), s.cycle.rbegin() + 1, s.cycle.rend());
  }
  return s;
}

inline bool SameSearch(const SearchSequence& a, const SearchSequence& b) {
  return Canonicalize(a) == Canonicalize(b);
}

// Text notation, 1-based: "1,2,[1,1,1]" is the prefix 1,2 followed by
// 1,1,1 repeated forever; "1,2,3" is finite; "[1,2]" is a pure cycle.
inline std::string Format(const SearchSequence& s) {
  std::string out;
  for (size_t i = 0; i < s.prefix.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.prefix[i] + 1);
  }
  if (!s.cycle.empty()) {
    if (!out.empty()) out += ',';
    out += '[';
    for (size_t i = 0; i < s.cycle.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s.cycle[i] + 1);
    }
    out += ']';
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const SearchSequence& s) {
  return os << Format(s);
}

namespace internal {

inline std::vector<size_t> ParseIndexList(std::string_view text) {
  std::vector<size_t> out;
  if (text.empty()) return out;
  size_t start = 0;
  while (true) {
    size_t comma = text.find(',', start);
    std::string_view item = text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (item.empty() || item.size() > 9 ||
        !std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("bad box index '" + std::string(item) + "'");
    }
    size_t v = std::stoul(std::string(item));
    if (v == 0) throw ParseError("box indices are 1-based");
    out.push_back(v - 1);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace internal

inline SearchSequence ParseSequence(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (c != ' ' && c != '\t') compact += c;
  }
  std::string_view v(compact);
  SearchSequence s;
  const size_t open = v.find('[');
  if (open == std::string_view::npos) {
    if (v.find(']') != std::string_view::npos) throw ParseError("unbalanced ']'");
    s.prefix = internal::ParseIndexList(v);
    if (s.prefix.empty()) throw ParseError("empty sequence");
    return s;
  }
  if (v.back() != ']' || v.find(']') != v.size() - 1 ||
      v.find('[', open + 1) != std::string_view::npos) {
    throw ParseError("cycle must be a single trailing [..] group");
  }
  std::string_view head = v.substr(0, open);
  if (!head.empty()) {
    if (head.back() != ',') throw ParseError("expected ',' before '['");
    head.remove_suffix(1);
    s.prefix = internal::ParseIndexList(head);
  }
  s.cycle = internal::ParseIndexList(v.substr(open + 1, v.size() - open - 2));
  if (s.cycle.empty()) throw ParseError("empty cycle");
  return s;
}

// Throws unless every index is below n.
inline void CheckIndices(const SearchSequence& s, size_t n) {
  for (const auto* v : {&s.prefix, &s.cycle}) {
    for (size_t x : *v) {
      if (x >= n)
        throw ValidationError(
            {"box index " + std::to_string(x + 1) + " out of range 1.." + std::to_string(n)});
    }
  }
}

}  // namespace boxsearch

#endif  // BOXSEARCH_SEQUENCE_HPP_
