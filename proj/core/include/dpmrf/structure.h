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

#ifndef DPMRF_STRUCTURE_H_
#define DPMRF_STRUCTURE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dpmrf/dataset.h"
#include "dpmrf/models.h"
#include "dpmrf/rng.h"

namespace dpmrf {

struct GraphEstimate {
  int num_vars = 0;
  EdgeSet edges;          // pairs (i, j) with i < j
  bool released = true;   // false is the bottom outcome; it has no edges

  static GraphEstimate Bottom(int num_vars) { return {num_vars, {}, false}; }
  // Sorted "i-j" pairs joined by ';', e.g. "0-1;2-3". The empty graph is "".
  std::string Encode() const;
  friend bool operator==(const GraphEstimate&, const GraphEstimate&) = default;
};

enum class ModelKind { kIsing, kPairwise, kMrf };
ModelKind ParseModelKind(const std::string& name);  // "ising" | "pairwise" | "mrf"
std::string ModelKindName(ModelKind kind);

struct BaseStructureConfig {
  ModelKind kind = ModelKind::kIsing;
  double lambda = 1.0;
  double eta = 0.1;
  int order = 2;                  // t for t-wise models
  std::optional<int> iterations;  // Frank-Wolfe T override
  uint64_t seed = 0;
};

// Zero-noise parameter estimate thresholded at eta/2 (strict): Ising keeps
// |A_hat(i,j)| > eta/2, pairwise keeps max_{a,b} |W_hat(i,j)(a,b)| > eta/2 and
// t-wise keeps (i, j) when some recovered monomial containing both exceeds
// eta/2 in magnitude. Never touches a privacy accountant.
GraphEstimate BaseStructure(const Dataset& data, const BaseStructureConfig& config);

// Thresholding step on its own, for estimates computed elsewhere.
GraphEstimate ThresholdIsing(const Matrix& A_hat, double eta);

struct StabilityConfig {
  int blocks = 0;         // 0 selects DefaultBlockCount(epsilon, delta)
  double epsilon = 1.0;
  double delta = 1e-6;
  bool add_noise = true;  // false: deterministic threshold test (testing only)
  int threads = 1;
};

int DefaultBlockCount(double epsilon, double delta);
// ln(1/delta)/epsilon + 1.
double ReleaseThreshold(double epsilon, double delta);

struct ModeSummary {
  GraphEstimate mode;     // ties broken by the smallest encoding
  int top_count = 0;      // c1
  int runner_up = 0;      // c2, zero when only one distinct output exists
  double margin() const { return 0.5 * (top_count - runner_up); }
};

ModeSummary SummarizeOutputs(const std::vector<GraphEstimate>& outputs);

// Propose-test-release: true iff margin + Laplace(1/epsilon) exceeds the
// threshold. Draws exactly one Laplace variate when noise is enabled.
bool PassesReleaseTest(double margin, double epsilon, double delta, bool add_noise,
                       RngStream& rng);

// Base learner applied to one contiguous block.
using BlockLearner = std::function<GraphEstimate(const Dataset& block, std::size_t index)>;

struct StructureResult {
  GraphEstimate graph;
  int blocks = 0;
  std::size_t block_size = 0;
  ModeSummary summary;
  std::vector<GraphEstimate> block_outputs;  // never released; diagnostics only
};

// Splits rows into `blocks` equal contiguous blocks (dropping the remainder),
// runs the base on each and releases the modal graph only if it passes the
// noisy margin test, otherwise returns the bottom outcome. Throws
// kInsufficientData when n < blocks.
StructureResult StableModeStructure(const Dataset& data, const BlockLearner& base,
                                    const StabilityConfig& config, uint64_t seed);

// Block learner running BaseStructure with per-block seeds.
BlockLearner MakeBaseLearner(const BaseStructureConfig& config);

}  // namespace dpmrf

#endif  // DPMRF_STRUCTURE_H_
