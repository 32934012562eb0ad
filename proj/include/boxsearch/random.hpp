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

#ifndef BOXSEARCH_RANDOM_HPP_
#define BOXSEARCH_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace boxsearch {

using Engine = std::mt19937_64;

// Mixes (seed, stream) into an engine seed so that streams drawn for
// different counters are unrelated (SplitMix64 finalizer).
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline Engine StreamEngine(std::uint64_t seed, std::uint64_t stream) {
  return Engine(MixSeed(seed, stream));
}

}  // namespace boxsearch

#endif  // BOXSEARCH_RANDOM_HPP_
