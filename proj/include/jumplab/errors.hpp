// Copyright 2026 The jumplab Authors
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

#include <stdexcept>
#include <string>
#include <utility>

namespace jumplab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A configuration value is missing or malformed. key() is the dotted path
/// of the offending entry, e.g. "model.alpha".
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Overflow, underflow, loss of positivity or a failed integration step.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Problem size above the supported cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Requested item (e.g. a transition) does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Rank-1 retraction of a matrix whose top eigenvalue is degenerate.
class IllPosedRetraction : public Error {
 public:
  using Error::Error;
};

/// Two eigenvalues along a matrix curve came closer than the allowed gap.
class NearDegeneracyError : public Error {
 public:
  NearDegeneracyError(double parameter, int first, int second, double gap)
      : Error("eigenvalues " + std::to_string(first) + " and " +
              std::to_string(second) + " nearly cross at t=" +
              std::to_string(parameter) + " (gap " + std::to_string(gap) +
              ")"),
        parameter_(parameter),
        first_(first),
        second_(second) {}
  double parameter() const { return parameter_; }
  int first() const { return first_; }
  int second() const { return second_; }

 private:
  double parameter_;
  int first_;
  int second_;
};

/// The periodic lattice is too small for the requested diffusion time.
class DomainTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace jumplab
