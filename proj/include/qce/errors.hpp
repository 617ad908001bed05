// Copyright 2026 The qce Authors
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

#ifndef QCE_ERRORS_HPP
#define QCE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qce {

// Default tolerance wherever a tol parameter is optional: two orders of
// magnitude above the eigensolver residual.
inline constexpr double kDefaultTol = 1e-9;

enum class ErrorCode {
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  InvalidPovm,
  InvalidDistribution,
  InvalidState,
  InvalidGame,
  ConditionNotViolated,
  HermitianConditionViolated,
  NotApplicable,
  NumericalBreakdown,
  ParseError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidPovm: return "InvalidPovm";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidGame: return "InvalidGame";
    case ErrorCode::ConditionNotViolated: return "ConditionNotViolated";
    case ErrorCode::HermitianConditionViolated: return "HermitianConditionViolated";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qce

#endif  // QCE_ERRORS_HPP
