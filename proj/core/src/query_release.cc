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

#include "dpmrf/query_release.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "dpmrf/error.h"
#include "dpmrf/parallel.h"

namespace dpmrf {
namespace {

uint64_t Mask(const MonomialIndex& monomial) {
  uint64_t mask = 0;
  for (int j : monomial.indices()) mask |= uint64_t{1} << j;
  return mask;
}

// Character of the state index s at the set with bit mask `mask`; bit d of s
// set means spin +1 at coordinate d.
inline double Character(uint64_t s, uint64_t mask, int size) {
  const int minus = size - std::popcount(s & mask);
  return (minus & 1) ? -1.0 : 1.0;
}

// Log-domain weights -> normalized probabilities.
void Normalize(const std::vector<double>& log_weights, std::vector<double>& probs) {
  const double peak = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0.0;
  for (std::size_t s = 0; s < log_weights.size(); ++s) {
    probs[s] = std::exp(log_weights[s] - peak);
    total += probs[s];
  }
  for (double& v : probs) v /= total;
}

double SyntheticAnswer(const std::vector<double>& probs, uint64_t mask, int size) {
  double acc = 0.0;
  for (std::size_t s = 0; s < probs.size(); ++s) acc += probs[s] * Character(s, mask, size);
  return acc;
}

}  // namespace

ParityTable::ParityTable(int num_vars, int order)
    : num_vars_(num_vars), order_(order) {
  Require(num_vars >= 0 && order >= 0, "parity table needs p, t >= 0");
  entries_[MonomialIndex{}] = 1.0;
}

void ParityTable::Set(const MonomialIndex& monomial, double value) {
  Require(static_cast<int>(monomial.size()) <= order_, "parity order exceeds t");
  Require(monomial.MaxIndex() < num_vars_, "parity index out of range");
  Require(std::isfinite(value) && std::abs(value) <= 1.0, "parity value outside [-1, 1]");
  Require(!monomial.empty() || value == 1.0, "the empty parity is always 1");
  entries_[monomial] = value;
}

double ParityTable::Get(const MonomialIndex& monomial) const {
  auto it = entries_.find(monomial);
  Require(it != entries_.end(), "missing parity " + monomial.ToString());
  return it->second;
}

double ParityTable::MaxAbsDifference(const ParityTable& other) const {
  double worst = 0.0;
  for (const auto& [monomial, value] : entries_) {
    worst = std::max(worst, std::abs(value - other.Get(monomial)));
  }
  return worst;
}

std::vector<MonomialIndex> ParityQueries(int num_vars, int order) {
  std::vector<MonomialIndex> queries = EnumerateMonomials(num_vars, order);
  queries.erase(queries.begin());  // the empty set
  return queries;
}

ParityTable EmpiricalParities(const Dataset& data, int order) {
  Require(data.binary(), "parities need binary data");
  Require(!data.empty(), "parities of an empty dataset");
  const CompressedRows rows = Compress(data);
  const double n = static_cast<double>(data.num_rows());
  ParityTable table(data.num_vars(), order);
  for (const MonomialIndex& query : ParityQueries(data.num_vars(), order)) {
    double acc = 0.0;
    for (std::size_t r = 0; r < rows.num_unique(); ++r) {
      acc += rows.counts[r] * query.Parity(rows.row(r));
    }
    table.Set(query, std::clamp(acc / n, -1.0, 1.0));
  }
  return table;
}

ParityTable DistributionParities(const ExactDistribution& dist, int order) {
  Require(dist.binary(), "parities need a binary distribution");
  ParityTable table(dist.num_vars(), order);
  for (const MonomialIndex& query : ParityQueries(dist.num_vars(), order)) {
    table.Set(query, std::clamp(ExactParity(dist, query), -1.0, 1.0));
  }
  return table;
}

int DefaultPmwRounds(std::size_t num_queries, std::size_t num_rows) {
  const auto root = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(num_rows))));
  return static_cast<int>(std::max<std::size_t>(1, std::min(num_queries, root)));
}

PmwResult PmwRelease(const Dataset& data, int order, const PmwOptions& options,
                     Accountant* accountant) {
  Require(data.binary(), "PMW needs binary data");
  Require(order >= 1, "PMW needs order >= 1");
  const int p = data.num_vars();
  const std::size_t cap = options.state_cap == 0 ? DefaultStateCap() : options.state_cap;
  Require(p < 63, "too many variables for PMW");
  const std::size_t num_states = CheckedStateCount(p, 2, cap);
  Require(!data.empty(), "PMW on an empty dataset");
  const std::vector<MonomialIndex> queries = ParityQueries(p, order);
  const int rounds = options.rounds > 0 ? options.rounds
                                        : DefaultPmwRounds(queries.size(), data.num_rows());
  if (!options.non_private) {
    Require(options.rho > 0, "private PMW needs rho > 0");
    Require(accountant != nullptr, "private PMW needs an accountant");
    accountant->Spend(options.label, options.rho);
  }

  const double n = static_cast<double>(data.num_rows());
  const ParityTable truth = EmpiricalParities(data, order);
  std::vector<double> target(queries.size());
  std::vector<uint64_t> masks(queries.size());
  std::vector<int> sizes(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    target[q] = truth.Get(queries[q]);
    masks[q] = Mask(queries[q]);
    sizes[q] = static_cast<int>(queries[q].size());
  }

  const double eps0 = options.non_private ? 0.0 : std::sqrt(options.rho / rounds);
  const double select_scale = options.non_private ? 0.0 : 8.0 / (n * eps0);
  const double answer_scale = options.non_private ? 0.0 : 4.0 / (n * eps0);
  const double per_charge = options.non_private ? 0.0 : options.rho / (2.0 * rounds);
  // Keeps the exact-correction step finite when an answer hits +-1.
  constexpr double kAnswerClamp = 1.0 - 1e-9;

  PmwResult result;
  result.rounds = rounds;
  result.round_ledger = Accountant(options.non_private ? 0.0 : options.rho);
  std::vector<double> log_weights(num_states, 0.0);
  std::vector<double> probs(num_states, 1.0 / static_cast<double>(num_states));
  std::vector<double> synthetic(queries.size(), 0.0);
  RngStream rng = options.rng;

  auto refresh = [&] {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      synthetic[q] = SyntheticAnswer(probs, masks[q], sizes[q]);
    }
  };
  refresh();

  for (int r = 0; r < rounds; ++r) {
    CheckDeadline();
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const double score =
          std::abs(target[q] - synthetic[q]) + LaplaceNoise(select_scale, rng);
      if (score > best_score) {
        best_score = score;
        best = q;
      }
    }
    const double answer = std::clamp(target[best] + LaplaceNoise(answer_scale, rng),
                                     -kAnswerClamp, kAnswerClamp);
    if (!options.non_private) {
      const std::string prefix = "round-" + std::to_string(r + 1);
      result.round_ledger.Spend(prefix + "-select", per_charge);
      result.round_ledger.Spend(prefix + "-answer", per_charge);
    }
    result.selected.push_back(static_cast<int>(best));

    const double current = std::clamp(synthetic[best], -kAnswerClamp, kAnswerClamp);
    double step = 0.0;
    if (options.update == PmwUpdate::kExactCorrection) {
      step = 0.5 * std::log((1.0 + answer) * (1.0 - current) /
                            ((1.0 - answer) * (1.0 + current)));
    } else {
      const double gap = answer - current;
      step = std::copysign(std::min(0.25, 0.25 * std::abs(gap)), gap);
    }
    for (std::size_t s = 0; s < num_states; ++s) {
      log_weights[s] += step * Character(s, masks[best], sizes[best]);
    }
    Normalize(log_weights, probs);
    refresh();

    double worst = 0.0;
    for (std::size_t q = 0; q < queries.size(); ++q) {
      worst = std::max(worst, std::abs(target[q] - synthetic[q]));
    }
    result.max_error.push_back(worst);
  }

  result.table = ParityTable(p, order);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    result.table.Set(queries[q], std::clamp(synthetic[q], -1.0, 1.0));
  }
  result.distribution = std::move(probs);
  return result;
}

ParityReleaseFn DefaultParityRelease() {
  return [](const Dataset& held_out, int order, double rho, bool non_private,
            Accountant* accountant, RngStream rng) {
    if (non_private) return EmpiricalParities(held_out, order);
    PmwOptions options;
    options.rho = rho;
    options.rng = rng;
    return PmwRelease(held_out, order, options, accountant).table;
  };
}

}  // namespace dpmrf
