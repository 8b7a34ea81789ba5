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

#ifndef DPMRF_RNG_H_
#define DPMRF_RNG_H_

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace dpmrf {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3"). Exposed for known-answer tests.
std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

uint64_t SplitMix64(uint64_t x);

// Hash of a label used to derive child streams. FNV-1a then SplitMix64.
uint64_t HashLabel(std::string_view label);

// Counter-based random stream. A stream is identified by a 64-bit key; draws
// walk the 64-bit block counter. Child streams derive their key from the
// parent key and a label, so the value sequence of any stream depends only on
// the chain of labels leading to it, never on scheduling.
//
// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = uint64_t;

  explicit RngStream(uint64_t seed = 0);

  RngStream Child(uint64_t label) const;
  RngStream Child(std::string_view label) const;
  RngStream Child(std::string_view label, uint64_t index) const {
    return Child(label).Child(index);
  }

  uint64_t key() const { return key_; }

  uint64_t NextU64();
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform in (0, 1).
  double UniformOpen();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

 private:
  uint64_t key_;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buffer_{};
  int buffered_ = 0;  // number of unused 64-bit words left in buffer_
};

}  // namespace dpmrf

#endif  // DPMRF_RNG_H_
