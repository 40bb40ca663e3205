/*
 * Copyright 2026 The ameu-pricing Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AMEU_ERROR_HPP
#define AMEU_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ameu {

enum class ErrorKind {
  InvalidArgument,
  NonpositivePropensity,
  ConditionViolated,
  SingularSystem,
  ResidualTooLarge,
  OutOfRange,
  DomainError,
  TruncationTooLarge,
  NormalizationFailure,
  GridMismatch,
  ParseError,
  GapError,
  NonpositiveError,
  InsufficientData,
  OptimizerDiverged,
  NoRoot,
  UnknownFigure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a machine-readable kind alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a consumption propensity (delta, delta_plus or delta_minus)
/// is not strictly positive. Carries the offending value.
class NonpositivePropensity : public Error {
 public:
  NonpositivePropensity(std::string_view which, double value);

  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Raised by the ellipticity check; carries both sides of the inequality.
class ConditionViolated : public Error {
 public:
  ConditionViolated(double lhs, double rhs);

  double lhs() const noexcept { return lhs_; }
  double rhs() const noexcept { return rhs_; }

 private:
  double lhs_;
  double rhs_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace ameu

#endif  // AMEU_ERROR_HPP
