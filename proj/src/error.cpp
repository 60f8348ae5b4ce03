// Copyright 2026 The trsys Authors
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

#include "trsys/error.hpp"

namespace trsys {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kNotALattice: return "NotALattice";
    case ErrorCode::kNotBounded: return "NotBounded";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kNotGraded: return "NotGraded";
    case ErrorCode::kAmbientMismatch: return "AmbientMismatch";
    case ErrorCode::kNotModular: return "NotModular";
    case ErrorCode::kNotSaturated: return "NotSaturated";
    case ErrorCode::kUnsupportedSubposet: return "UnsupportedSubposet";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kClassificationGap: return "ClassificationGap";
    case ErrorCode::kNotComposable: return "NotComposable";
    case ErrorCode::kNotMonotone: return "NotMonotone";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

void invariant_failure(const std::string& what) {
  throw Error(ErrorCode::kInvariantViolation, what);
}

}  // namespace trsys
