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

#ifndef DPMRF_QUERY_RELEASE_H_
#define DPMRF_QUERY_RELEASE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "dpmrf/dataset.h"
#include "dpmrf/oracle.h"
#include "dpmrf/polynomial.h"
#include "dpmrf/privacy.h"
#include "dpmrf/rng.h"

namespace dpmrf {

// Answers to all parity queries prod_{j in I} z_j with |I| <= order. The
// empty set always maps to 1 and every value lies in [-1, 1].
class ParityTable {
 public:
  ParityTable(int num_vars = 0, int order = 0);

  int num_vars() const { return num_vars_; }
  int order() const { return order_; }
  const std::map<MonomialIndex, double>& entries() const { return entries_; }

  // Throws kInvalidArgument if |I| > order, I is the empty set with a value
  // other than 1, or the value is outside [-1, 1].
  void Set(const MonomialIndex& monomial, double value);
  // Throws kInvalidArgument when the entry is missing.
  double Get(const MonomialIndex& monomial) const;
  bool Has(const MonomialIndex& monomial) const {
    return entries_.count(monomial) > 0;
  }

  double MaxAbsDifference(const ParityTable& other) const;

 private:
  int num_vars_;
  int order_;
  std::map<MonomialIndex, double> entries_;
};

// Exact empirical means of every parity of order <= `order`.
ParityTable EmpiricalParities(const Dataset& data, int order);

// Parities of a binary distribution, computed by enumeration.
ParityTable DistributionParities(const ExactDistribution& dist, int order);

enum class PmwUpdate {
  // Multiplicative step that makes the selected query's synthetic answer
  // equal the noisy answer (an information projection).
  kExactCorrection,
  // Step exp(eta * sign * chi_I) with eta = min(0.25, 0.25 |answer error|).
  kFixedRate,
};

struct PmwOptions {
  double rho = 1.0;
  int rounds = 0;              // 0 selects min(#queries, ceil(sqrt(n)))
  bool non_private = false;    // zero noise; the accountant is untouched
  PmwUpdate update = PmwUpdate::kExactCorrection;
  RngStream rng{0};
  std::size_t state_cap = 0;   // 0 selects DefaultStateCap()
  std::string label = "pmw";
};

struct PmwResult {
  ParityTable table;
  int rounds = 0;
  // Per-round charges: "round-r-select" and "round-r-answer", rho/(2R) each.
  Accountant round_ledger{0.0};
  // Exact max_I |synthetic(I) - Q(I)| after each round (diagnostic only;
  // never released).
  std::vector<double> max_error;
  std::vector<int> selected;  // query index chosen each round
  // Final synthetic distribution over {-1,+1}^p, mixed-radix state order.
  std::vector<double> distribution;
};

int DefaultPmwRounds(std::size_t num_queries, std::size_t num_rows);

// Private multiplicative weights over the non-empty parities of order
// <= `order`. Each round spends eps0 = sqrt(rho/R) of pure DP, half on
// report-noisy-max selection (Laplace scale 8/(n eps0) on each |error|) and
// half on a Laplace(4/(n eps0)) answer. The whole rho is charged to
// `accountant` as one entry before the data is read.
PmwResult PmwRelease(const Dataset& data, int order, const PmwOptions& options,
                     Accountant* accountant);

std::vector<MonomialIndex> ParityQueries(int num_vars, int order);

// Pluggable query-release strategy used by the l-infinity MRF learner. It
// receives the held-out rows, the order, the budget slice, the accountant
// and a dedicated random stream, and must charge whatever it spends.
using ParityReleaseFn = std::function<ParityTable(
    const Dataset& held_out, int order, double rho, bool non_private,
    Accountant* accountant, RngStream rng)>;

// PMW for private runs and the empirical table for non-private runs.
ParityReleaseFn DefaultParityRelease();

}  // namespace dpmrf

#endif  // DPMRF_QUERY_RELEASE_H_
