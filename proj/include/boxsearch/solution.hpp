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

#ifndef BOXSEARCH_SOLUTION_HPP_
#define BOXSEARCH_SOLUTION_HPP_

#include "boxsearch/evaluate.hpp"
#include "boxsearch/rational.hpp"

namespace boxsearch {

// Value and optimal strategies of a single-target game.
struct SolveResult {
  Rational value;
  HiderStrategy hider;
  MixedSearcher searcher;
  // When set, `searcher` lists rotations that are redrawn independently at
  // the start of every round instead of being fixed once.
  bool per_round = false;
};

}  // namespace boxsearch

#endif  // BOXSEARCH_SOLUTION_HPP_
