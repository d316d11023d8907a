// Copyright 2026 The UQF Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace uqf {

// Failure categories. Everything except kParse is a domain/precondition
// failure; the CLI maps those to exit code 2 and kParse to exit code 3.
enum class ErrorCode {
  kSize,
  kLabel,
  kNotSquare,
  kUnnormalized,
  kInfeasible,
  kInvalidPovm,
  kInvalidCircuit,
  kRange,
  kNotConvertible,
  kNotDilutable,
  kSourceProduct,
  kConstraintNotSatisfied,
  kParse,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSize: return "size";
    case ErrorCode::kLabel: return "label";
    case ErrorCode::kNotSquare: return "not-square";
    case ErrorCode::kUnnormalized: return "unnormalized";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kInvalidPovm: return "invalid-povm";
    case ErrorCode::kInvalidCircuit: return "invalid-circuit";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kNotConvertible: return "not-convertible";
    case ErrorCode::kNotDilutable: return "not-dilutable";
    case ErrorCode::kSourceProduct: return "source-product";
    case ErrorCode::kConstraintNotSatisfied: return "constraint-not-satisfied";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uqf
