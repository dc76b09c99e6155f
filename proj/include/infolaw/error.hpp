// Copyright 2026 The InfoLaw Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INFOLAW_ERROR_HPP_
#define INFOLAW_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace infolaw {

enum class ErrorCode {
  kInvalidParameter,
  kInvalidInput,
  kNonpositiveRate,
  kUndefinedCorrelation,
  kInsufficientDiversity,
  kImpossiblePlan,
  kLawQuality,
  kIo,
};

// Stable machine-readable name, used in CLI error JSON.
constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "invalid_parameter";
    case ErrorCode::kInvalidInput: return "invalid_input";
    case ErrorCode::kNonpositiveRate: return "nonpositive_rate";
    case ErrorCode::kUndefinedCorrelation: return "undefined_correlation";
    case ErrorCode::kInsufficientDiversity: return "insufficient_diversity";
    case ErrorCode::kImpossiblePlan: return "impossible_plan";
    case ErrorCode::kLawQuality: return "law_quality";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace infolaw

#endif  // INFOLAW_ERROR_HPP_
