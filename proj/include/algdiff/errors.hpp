// Copyright 2026 The algdiff Authors
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

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace algdiff {

/// Bad argument or unsatisfied precondition (field mismatch, out-of-range
/// parameter, division by zero).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed polynomial text, scalar or JSON document.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis on the input does not hold. Carries the name of
/// the hypothesis and, when one is known, a shift of X that repairs it.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(std::string hypothesis, const std::string& what,
                  std::optional<std::string> suggested_shift = std::nullopt)
      : std::runtime_error(hypothesis + ": " + what +
                           (suggested_shift ? "; try --shift " + *suggested_shift : "")),
        hypothesis_(std::move(hypothesis)),
        shift_(std::move(suggested_shift)) {}

  const std::string& hypothesis() const { return hypothesis_; }
  const std::optional<std::string>& suggested_shift() const { return shift_; }

 private:
  std::string hypothesis_;
  std::optional<std::string> shift_;
};

/// A reconstruction (Padé, linear relation) failed; the caller should retry
/// with another expansion point or larger bounds.
class ReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal invariant breach. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define ALGDIFF_ASSERT(cond, msg)                                                     \
  do {                                                                                \
    if (!(cond)) throw ::algdiff::InvariantError(std::string(__FILE__) + ":" +        \
                                                 std::to_string(__LINE__) + ": " + (msg)); \
  } while (0)

}  // namespace algdiff
