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

#ifndef BOXSEARCH_ERROR_HPP_
#define BOXSEARCH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace boxsearch {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (game files, rational strings, sequence notation).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value violates a documented invariant. Carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(Join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

// The requested solver does not cover this game instance.
class UnsupportedGame : public Error {
 public:
  using Error::Error;
};

// A bounded search (horizon, r-range, look cap) ran out before finishing.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace boxsearch

#endif  // BOXSEARCH_ERROR_HPP_
