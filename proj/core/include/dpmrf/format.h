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

#ifndef DPMRF_FORMAT_H_
#define DPMRF_FORMAT_H_

#include <charconv>
#include <string>

namespace dpmrf {

// Shortest decimal string that round-trips to the same double. Used for all
// CSV output so files are byte-reproducible.
inline std::string FormatDouble(double value) {
  char buf[64];
  auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

}  // namespace dpmrf

#endif  // DPMRF_FORMAT_H_
