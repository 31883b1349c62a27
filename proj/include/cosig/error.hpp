// Copyright 2026 The Cosig Authors.
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

#ifndef COSIG_ERROR_HPP
#define COSIG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cosig {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: an instance, prior, scheme or parameter breaks a
/// documented invariant. Carries one message per violated constraint.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(message), violations_{message} {}
  explicit ValidationError(std::vector<std::string> violations)
      : Error(Join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string Join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += "; ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// A conditional value was requested for a signal that is never sent.
class ZeroProbabilitySignal : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The requested construction does not support the instance's constraint
/// structure (e.g. bipartite edges where a complete graph is required).
class UnsupportedConstraint : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// No valid scheme exists for the given input.
class Infeasible : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A procedure's precondition on the values fails (e.g. zero welfare).
class Degenerate : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A winner mapping is dependent in the truncated partition matroid.
class MatroidViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A serialized signal is truncated or inconsistent with its parameters.
class DecodeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An exact computation would exceed its configured size budget.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace cosig

#endif  // COSIG_ERROR_HPP
