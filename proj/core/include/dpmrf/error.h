// Copyright 2026 The dpmrf Authors
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

#ifndef DPMRF_ERROR_H_
#define DPMRF_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpmrf {

enum class ErrorCode {
  kInvalidArgument,
  kStateSpaceTooLarge,
  kBudgetExceeded,
  kNoEdges,
  kTooManyFeatures,
  kInsufficientData,
  kTimeout,
  kParse,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as dpmrf::Error; code() identifies the
// failure class so callers (and the experiment harness) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorCode::kInvalidArgument, message);
}

}  // namespace dpmrf

#endif  // DPMRF_ERROR_H_
