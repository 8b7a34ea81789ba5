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

#include "dpmrf/error.h"

#include <string>

#include "dpmrf/parallel.h"

namespace dpmrf {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kStateSpaceTooLarge:
      return "state-space-too-large";
    case ErrorCode::kBudgetExceeded:
      return "budget-exceeded";
    case ErrorCode::kNoEdges:
      return "no-edges";
    case ErrorCode::kTooManyFeatures:
      return "too-many-features";
    case ErrorCode::kInsufficientData:
      return "insufficient-data";
    case ErrorCode::kTimeout:
      return "timeout";
    case ErrorCode::kParse:
      return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

namespace {
thread_local std::optional<std::chrono::steady_clock::time_point> tls_deadline;
}  // namespace

ScopedDeadline::ScopedDeadline(std::chrono::steady_clock::duration budget)
    : previous_(tls_deadline) {
  const auto deadline = std::chrono::steady_clock::now() + budget;
  tls_deadline = previous_ ? std::min(*previous_, deadline) : deadline;
}

ScopedDeadline::~ScopedDeadline() { tls_deadline = previous_; }

void CheckDeadline() {
  if (tls_deadline && std::chrono::steady_clock::now() > *tls_deadline) {
    Fail(ErrorCode::kTimeout, "time limit exceeded");
  }
}

}  // namespace dpmrf
