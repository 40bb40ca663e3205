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

#include "ameu/error.hpp"

#include <sstream>

namespace ameu {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonpositivePropensity: return "NonpositivePropensity";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::TruncationTooLarge: return "TruncationTooLarge";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::GapError: return "GapError";
    case ErrorKind::NonpositiveError: return "NonpositiveError";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::OptimizerDiverged: return "OptimizerDiverged";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::UnknownFigure: return "UnknownFigure";
  }
  return "Unknown";
}

namespace {

std::string propensity_message(std::string_view which, double value) {
  std::ostringstream os;
  os.precision(10);
  os << which << " = " << value << " must be strictly positive";
  return os.str();
}

std::string condition_message(double lhs, double rhs) {
  std::ostringstream os;
  os.precision(10);
  os << "ellipticity condition violated: min(delta_plus, delta_minus) = "
     << lhs << " <= " << rhs;
  return os.str();
}

}  // namespace

NonpositivePropensity::NonpositivePropensity(std::string_view which,
                                             double value)
    : Error(ErrorKind::NonpositivePropensity,
            propensity_message(which, value)),
      value_(value) {}

ConditionViolated::ConditionViolated(double lhs, double rhs)
    : Error(ErrorKind::ConditionViolated, condition_message(lhs, rhs)),
      lhs_(lhs),
      rhs_(rhs) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ameu
