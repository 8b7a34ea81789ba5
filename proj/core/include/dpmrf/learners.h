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

#ifndef DPMRF_LEARNERS_H_
#define DPMRF_LEARNERS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpmrf/dataset.h"
#include "dpmrf/matrix.h"
#include "dpmrf/models.h"
#include "dpmrf/polynomial.h"
#include "dpmrf/privacy.h"
#include "dpmrf/query_release.h"

namespace dpmrf {

struct LearnerOptions {
  double lambda = 1.0;       // width bound
  double rho = 1.0;          // total zCDP budget of the call
  bool non_private = false;  // zero-noise fits; the accountant is untouched
  uint64_t seed = 0;
  std::optional<int> iterations;  // Frank-Wolfe T override
  int threads = 1;
  bool clamp = true;         // clamp final edge estimates to [-lambda, lambda]
  std::size_t feature_cap = std::size_t{1} << 16;
};

struct IsingEstimate {
  Matrix A_hat;                 // symmetric, zero diagonal
  std::vector<double> theta_hat;
  Matrix raw;                   // row i: node i's unsymmetrized estimates
  std::vector<std::vector<double>> node_weights;

  IsingModel ToModel() const;
};

// One sparse logistic fit per node at rho/p over features [z_-i, 1] with
// radius 2 lambda. A_hat(i, j) averages half the two endpoint coefficients.
IsingEstimate LearnIsing(const Dataset& data, const LearnerOptions& options,
                         Accountant* accountant);

struct PairwiseEstimate {
  int num_vars = 0;
  int alphabet = 0;
  // Symmetrized estimates for every ordered pair (i, j), i != j, with rows
  // indexed by the symbol of i; W_hat[(j, i)] is the transpose of W_hat[(i, j)].
  std::map<Edge, Matrix> W_hat;
  // Direction-specific estimates from node i's regressions.
  std::map<Edge, Matrix> per_node;
  std::vector<std::string> warnings;

  PairwiseModel ToModel() const;
};

// For each node and unordered symbol pair {u, v}, a fit at rho/(k^2 p) on the
// rows with z_i in {u, v} (label +1 for u) over the one-hot encoding of
// [z_-i, 0] with radius 2 lambda k. The (v, u) fit is the negation of the
// (u, v) fit and is not charged again.
PairwiseEstimate LearnPairwise(const Dataset& data, const LearnerOptions& options,
                               Accountant* accountant);

struct MrfEstimate {
  int order = 0;
  MultilinearPolynomial u;
  // v_i: half of node i's fitted weights, as a polynomial over [p] minus {i}.
  std::vector<MultilinearPolynomial> node_polynomials;
  std::optional<ParityTable> parities;
  std::vector<std::string> warnings;

  BinaryMrf ToModel() const { return BinaryMrf(order, u); }
};

// Per-node fits at rho/p over all monomials of [p] minus {i} of size <= t-1;
// ubar(I u {i}) = w(I)/2 whenever i = min(I u {i}).
MrfEstimate LearnMrfL1(const Dataset& data, int order, const LearnerOptions& options,
                       Accountant* accountant);

struct LinfOptions {
  double split = 0.5;  // fraction of rows given to the per-node fits
  ParityReleaseFn release = DefaultParityRelease();
};

// The first floor(split n) rows feed per-node fits at rho/(2p); the remaining
// rows feed the parity release at rho/2. ubar(I u {i}) is the sum over the
// monomials I' of d_I v_i of coefficient times Qhat(I').
MrfEstimate LearnMrfLinf(const Dataset& data, int order, const LearnerOptions& options,
                         const LinfOptions& linf, Accountant* accountant);

}  // namespace dpmrf

#endif  // DPMRF_LEARNERS_H_
