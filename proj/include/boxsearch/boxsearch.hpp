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

#ifndef BOXSEARCH_BOXSEARCH_HPP_
#define BOXSEARCH_BOXSEARCH_HPP_

#include "boxsearch/best_response.hpp"
#include "boxsearch/certificate.hpp"
#include "boxsearch/closed_form.hpp"
#include "boxsearch/error.hpp"
#include "boxsearch/evaluate.hpp"
#include "boxsearch/finite_game.hpp"
#include "boxsearch/game.hpp"
#include "boxsearch/io.hpp"
#include "boxsearch/matrix_game.hpp"
#include "boxsearch/monte_carlo.hpp"
#include "boxsearch/multi_target.hpp"
#include "boxsearch/random.hpp"
#include "boxsearch/rational.hpp"
#include "boxsearch/sequence.hpp"
#include "boxsearch/solution.hpp"
#include "boxsearch/two_box.hpp"

#endif  // BOXSEARCH_BOXSEARCH_HPP_
