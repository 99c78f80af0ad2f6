// Copyright 2026 The cigames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CIG_ERROR_HPP_
#define CIG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cig {

enum class ErrorKind {
  invalid_choice,       // unknown choice label
  knowledge_violation,  // strategy conditions on a bit its player does not know
  parse,                // strategy/profile text error, with position
  budget_exceeded,      // enumeration larger than the configured budget
  selection_failure,    // empty payoff-dominant set at a leaf without fallback
  invalid_mechanism,    // distributional rule would raise a total
  schema,               // document format violation
  usage,                // bad arguments / unknown preset
};

struct Error : std::runtime_error {
  ErrorKind kind;
  Error(ErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

}  // namespace cig

#endif  // CIG_ERROR_HPP_
