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

#include "dpmrf/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "dpmrf/error.h"
#include "dpmrf/format.h"

namespace dpmrf {

std::size_t DefaultStateCap() {
  if (const char* env = std::getenv("DPMRF_STATE_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return std::size_t{1} << 20;
}

std::size_t CheckedStateCount(int num_vars, int alphabet, std::size_t cap) {
  std::size_t count = 1;
  for (int i = 0; i < num_vars; ++i) {
    if (count > cap / static_cast<std::size_t>(alphabet)) {
      Fail(ErrorCode::kStateSpaceTooLarge,
           std::to_string(alphabet) + "^" + std::to_string(num_vars) +
               " states exceed the cap of " + std::to_string(cap));
    }
    count *= alphabet;
  }
  return count;
}

ExactDistribution::ExactDistribution(int num_vars, int alphabet, bool binary,
                                     std::vector<double> probs)
    : num_vars_(num_vars),
      alphabet_(alphabet),
      binary_(binary),
      probs_(std::move(probs)) {}

std::vector<int8_t> ExactDistribution::State(std::size_t index) const {
  std::vector<int8_t> state(num_vars_);
  for (int i = 0; i < num_vars_; ++i) {
    const int digit = static_cast<int>(index % alphabet_);
    index /= alphabet_;
    state[i] = static_cast<int8_t>(binary_ ? 2 * digit - 1 : digit);
  }
  return state;
}

std::size_t ExactDistribution::Index(std::span<const int8_t> state) const {
  std::size_t index = 0;
  for (int i = num_vars_ - 1; i >= 0; --i) {
    const int digit = binary_ ? (state[i] + 1) / 2 : state[i];
    index = index * alphabet_ + digit;
  }
  return index;
}

double LogPotential(const Model& model, std::span<const int8_t> state) {
  if (const auto* ising = std::get_if<IsingModel>(&model)) {
    const int p = ising->num_vars();
    double total = 0.0;
    for (int i = 0; i < p; ++i) {
      total += ising->bias()[i] * state[i];
      const auto row = ising->couplings().row(i);
      for (int j = i + 1; j < p; ++j) total += row[j] * state[i] * state[j];
    }
    return total;
  }
  if (const auto* pairwise = std::get_if<PairwiseModel>(&model)) {
    double total = 0.0;
    for (int i = 0; i < pairwise->num_vars(); ++i) total += pairwise->theta(i, state[i]);
    for (const auto& [edge, w] : pairwise->weights()) {
      total += w(state[edge.first], state[edge.second]);
    }
    return total;
  }
  return std::get<BinaryMrf>(model).factorization().EvaluateUnchecked(state);
}

ExactDistribution ComputeExactDistribution(const Model& model, std::size_t cap) {
  const int p = NumVars(model);
  const int k = AlphabetSize(model);
  const bool binary = !std::holds_alternative<PairwiseModel>(model);
  const std::size_t count = CheckedStateCount(p, k, cap);

  std::vector<double> logp(count);
  std::vector<int8_t> state(p, binary ? -1 : 0);
  std::vector<int> digits(p, 0);
  for (std::size_t s = 0; s < count; ++s) {
    logp[s] = LogPotential(model, state);
    // Little-endian increment.
    for (int i = 0; i < p; ++i) {
      if (++digits[i] < k) {
        state[i] = static_cast<int8_t>(binary ? 2 * digits[i] - 1 : digits[i]);
        break;
      }
      digits[i] = 0;
      state[i] = static_cast<int8_t>(binary ? -1 : 0);
    }
  }
  const double top = *std::max_element(logp.begin(), logp.end());
  double total = 0.0;
  for (double& v : logp) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : logp) v /= total;
  return ExactDistribution(p, k, binary, std::move(logp));
}

double ExactConditional(const ExactDistribution& dist, int site, int value,
                        std::span<const int8_t> state) {
  Require(site >= 0 && site < dist.num_vars(), "site out of range");
  Require(static_cast<int>(state.size()) == dist.num_vars(),
          "state dimension mismatch");
  std::vector<int8_t> probe(state.begin(), state.end());
  double numerator = 0.0;
  double denominator = 0.0;
  for (int d = 0; d < dist.alphabet(); ++d) {
    const int symbol = dist.binary() ? 2 * d - 1 : d;
    probe[site] = static_cast<int8_t>(symbol);
    const double pr = dist.probs()[dist.Index(probe)];
    denominator += pr;
    if (symbol == value) numerator = pr;
  }
  return numerator / denominator;
}

double ExactConditional(const Model& model, int site, int value,
                        std::span<const int8_t> state, std::size_t cap) {
  return ExactConditional(ComputeExactDistribution(model, cap), site, value, state);
}

double ExactParity(const ExactDistribution& dist, const MonomialIndex& monomial) {
  Require(dist.binary(), "parities are defined for binary distributions");
  Require(monomial.MaxIndex() < dist.num_vars(), "monomial exceeds dimension");
  double total = 0.0;
  for (std::size_t s = 0; s < dist.num_states(); ++s) {
    // Spin at coordinate i is -1 exactly when bit i of s is clear.
    int sign = 1;
    for (int i : monomial.indices()) {
      if (((s >> i) & 1u) == 0) sign = -sign;
    }
    total += sign * dist.probs()[s];
  }
  // Rounding in the normalization can push |total| a few ulps past 1.
  return std::clamp(total, -1.0, 1.0);
}

double ExactParity(const Model& model, const MonomialIndex& monomial,
                   std::size_t cap) {
  return ExactParity(ComputeExactDistribution(model, cap), monomial);
}

double ExactExpectation(const ExactDistribution& dist,
                        const MultilinearPolynomial& f) {
  double total = 0.0;
  for (const auto& [monomial, value] : f.terms()) {
    total += value * ExactParity(dist, monomial);
  }
  return total;
}

double TvDistance(const ExactDistribution& a, const ExactDistribution& b) {
  Require(a.num_states() == b.num_states() && a.alphabet() == b.alphabet(),
          "distributions live on different state spaces");
  double total = 0.0;
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    total += std::abs(a.probs()[s] - b.probs()[s]);
  }
  return 0.5 * total;
}

void WriteDistributionCsv(std::ostream& out, const ExactDistribution& dist) {
  out << "index,prob\n";
  for (std::size_t s = 0; s < dist.num_states(); ++s) {
    out << s << ',' << FormatDouble(dist.probs()[s]) << '\n';
  }
}

}  // namespace dpmrf
