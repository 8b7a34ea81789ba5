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

#ifndef DPMRF_ORACLE_H_
#define DPMRF_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "dpmrf/models.h"
#include "dpmrf/polynomial.h"

namespace dpmrf {

// 2^20 unless the DPMRF_STATE_CAP environment variable holds a positive
// integer.
std::size_t DefaultStateCap();

// Number of states k^p; throws kStateSpaceTooLarge when it exceeds `cap`.
std::size_t CheckedStateCount(int num_vars, int alphabet, std::size_t cap);

// Dense probability table over S^p. State index is mixed-radix little-endian
// over coordinates (coordinate 0 is the fastest digit). Digit d maps to the
// symbol d for categorical models and to the spin 2d - 1 (so -1 before +1)
// for binary models.
class ExactDistribution {
 public:
  ExactDistribution(int num_vars, int alphabet, bool binary,
                    std::vector<double> probs);

  int num_vars() const { return num_vars_; }
  int alphabet() const { return alphabet_; }
  bool binary() const { return binary_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t num_states() const { return probs_.size(); }

  // Decodes a state index into spins (binary) or symbols.
  std::vector<int8_t> State(std::size_t index) const;
  std::size_t Index(std::span<const int8_t> state) const;

 private:
  int num_vars_;
  int alphabet_;
  bool binary_;
  std::vector<double> probs_;
};

// Unnormalized log-probability of a configuration (spins or symbols).
double LogPotential(const Model& model, std::span<const int8_t> state);

// Enumerates S^p, normalizes with a single max shift in the log domain.
ExactDistribution ComputeExactDistribution(const Model& model,
                                           std::size_t cap = DefaultStateCap());

// Pr(Z_i = value | Z_-i = state_-i); state[site] is ignored.
double ExactConditional(const ExactDistribution& dist, int site, int value,
                        std::span<const int8_t> state);
double ExactConditional(const Model& model, int site, int value,
                        std::span<const int8_t> state,
                        std::size_t cap = DefaultStateCap());

// E[prod_{i in I} Z_i] under a binary distribution.
double ExactParity(const ExactDistribution& dist, const MonomialIndex& monomial);
double ExactParity(const Model& model, const MonomialIndex& monomial,
                   std::size_t cap = DefaultStateCap());

// E[f(Z)] for a multilinear polynomial f under a binary distribution.
double ExactExpectation(const ExactDistribution& dist,
                        const MultilinearPolynomial& f);

double TvDistance(const ExactDistribution& a, const ExactDistribution& b);

// Golden-file CSV: header "index,prob", then one state per line with the
// probability printed at round-trip precision.
void WriteDistributionCsv(std::ostream& out, const ExactDistribution& dist);

}  // namespace dpmrf

#endif  // DPMRF_ORACLE_H_
