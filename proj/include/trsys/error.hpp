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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trsys {

// Stable numbering: the C API returns these values unchanged.
enum class ErrorCode : int {
  kOk = 0,
  kNotALattice = 1,
  kNotBounded = 2,
  kCycleDetected = 3,
  kSizeLimit = 4,
  kNotPrime = 5,
  kNotGraded = 6,
  kAmbientMismatch = 7,
  kNotModular = 8,
  kNotSaturated = 9,
  kUnsupportedSubposet = 10,
  kInvariantViolation = 11,
  kClassificationGap = 12,
  kNotComposable = 13,
  kNotMonotone = 14,
  kInvalidArgument = 15,
  kParseError = 16,
  kIoError = 17,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Throws InvariantViolation. Used where a theorem is re-checked at runtime.
[[noreturn]] void invariant_failure(const std::string& what);

inline void check_invariant(bool ok, const char* what) {
  if (!ok) invariant_failure(what);
}

}  // namespace trsys
