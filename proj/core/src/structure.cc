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

#include "dpmrf/structure.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "dpmrf/error.h"
#include "dpmrf/learners.h"
#include "dpmrf/parallel.h"
#include "dpmrf/privacy.h"

namespace dpmrf {

std::string GraphEstimate::Encode() const {
  std::string out;
  for (const auto& [i, j] : edges) {
    if (!out.empty()) out += ';';
    out += std::to_string(i) + "-" + std::to_string(j);
  }
  return out;
}

ModelKind ParseModelKind(const std::string& name) {
  if (name == "ising") return ModelKind::kIsing;
  if (name == "pairwise") return ModelKind::kPairwise;
  if (name == "mrf") return ModelKind::kMrf;
  Fail(ErrorCode::kInvalidArgument, "unknown model kind '" + name + "'");
}

std::string ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kIsing: return "ising";
    case ModelKind::kPairwise: return "pairwise";
    case ModelKind::kMrf: return "mrf";
  }
  return "";
}

GraphEstimate ThresholdIsing(const Matrix& A_hat, double eta) {
  GraphEstimate graph{static_cast<int>(A_hat.rows()), {}, true};
  for (std::size_t i = 0; i < A_hat.rows(); ++i) {
    for (std::size_t j = i + 1; j < A_hat.cols(); ++j) {
      if (std::abs(A_hat(i, j)) > eta / 2) {
        graph.edges.insert({static_cast<int>(i), static_cast<int>(j)});
      }
    }
  }
  return graph;
}

GraphEstimate BaseStructure(const Dataset& data, const BaseStructureConfig& config) {
  Require(config.eta > 0, "eta must be positive");
  LearnerOptions options;
  options.lambda = config.lambda;
  options.non_private = true;
  options.seed = config.seed;
  options.iterations = config.iterations;
  switch (config.kind) {
    case ModelKind::kIsing:
      return ThresholdIsing(LearnIsing(data, options, nullptr).A_hat, config.eta);
    case ModelKind::kPairwise: {
      const PairwiseEstimate est = LearnPairwise(data, options, nullptr);
      GraphEstimate graph{data.num_vars(), {}, true};
      for (const auto& [edge, w] : est.W_hat) {
        if (edge.first < edge.second && w.MaxAbs() > config.eta / 2) graph.edges.insert(edge);
      }
      return graph;
    }
    case ModelKind::kMrf: {
      const MrfEstimate est = LearnMrfL1(data, config.order, options, nullptr);
      GraphEstimate graph{data.num_vars(), {}, true};
      for (const auto& [monomial, coef] : est.u.terms()) {
        if (std::abs(coef) <= config.eta / 2) continue;
        const auto& idx = monomial.indices();
        for (std::size_t a = 0; a < idx.size(); ++a) {
          for (std::size_t b = a + 1; b < idx.size(); ++b) graph.edges.insert({idx[a], idx[b]});
        }
      }
      return graph;
    }
  }
  return GraphEstimate{data.num_vars(), {}, true};
}

int DefaultBlockCount(double epsilon, double delta) {
  Require(epsilon > 0, "epsilon must be positive");
  Require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  return static_cast<int>(std::ceil(12.0 * (1.0 + std::log(1.0 / delta) / epsilon)));
}

double ReleaseThreshold(double epsilon, double delta) {
  return std::log(1.0 / delta) / epsilon + 1.0;
}

ModeSummary SummarizeOutputs(const std::vector<GraphEstimate>& outputs) {
  std::map<std::string, int> counts;
  std::map<std::string, const GraphEstimate*> witness;
  for (const GraphEstimate& g : outputs) {
    const std::string key = g.Encode();
    ++counts[key];
    witness.emplace(key, &g);
  }
  ModeSummary summary;
  // std::map iterates keys in increasing order, so a strict comparison keeps
  // the smallest encoding among tied counts.
  std::string best;
  for (const auto& [key, count] : counts) {
    if (count > summary.top_count) {
      summary.top_count = count;
      best = key;
    }
  }
  for (const auto& [key, count] : counts) {
    if (key != best) summary.runner_up = std::max(summary.runner_up, count);
  }
  if (summary.top_count > 0) summary.mode = *witness.at(best);
  return summary;
}

bool PassesReleaseTest(double margin, double epsilon, double delta, bool add_noise,
                       RngStream& rng) {
  Require(epsilon > 0, "epsilon must be positive");
  Require(delta > 0 && delta < 1, "delta must lie in (0, 1)");
  const double noise = add_noise ? LaplaceNoise(1.0 / epsilon, rng) : 0.0;
  return margin + noise > ReleaseThreshold(epsilon, delta);
}

StructureResult StableModeStructure(const Dataset& data, const BlockLearner& base,
                                    const StabilityConfig& config, uint64_t seed) {
  Require(config.epsilon > 0, "epsilon must be positive");
  Require(config.delta > 0 && config.delta < 1, "delta must lie in (0, 1)");
  const int blocks =
      config.blocks > 0 ? config.blocks : DefaultBlockCount(config.epsilon, config.delta);
  Require(blocks >= 3, "need at least three blocks");
  const std::size_t n = data.num_rows();
  if (n < static_cast<std::size_t>(blocks)) {
    Fail(ErrorCode::kInsufficientData,
         std::to_string(n) + " rows cannot fill " + std::to_string(blocks) + " blocks");
  }
  StructureResult result;
  result.blocks = blocks;
  result.block_size = n / blocks;
  result.block_outputs.resize(blocks);
  ParallelFor(blocks, config.threads, [&](std::size_t b) {
    const Dataset block = data.Slice(b * result.block_size, (b + 1) * result.block_size);
    result.block_outputs[b] = base(block, b);
  });
  result.summary = SummarizeOutputs(result.block_outputs);

  RngStream rng = RngStream(seed).Child("release-test");
  if (PassesReleaseTest(result.summary.margin(), config.epsilon, config.delta,
                        config.add_noise, rng)) {
    result.graph = result.summary.mode;
    result.graph.released = true;
  } else {
    result.graph = GraphEstimate::Bottom(data.num_vars());
  }
  return result;
}

BlockLearner MakeBaseLearner(const BaseStructureConfig& config) {
  return [config](const Dataset& block, std::size_t index) {
    BaseStructureConfig local = config;
    local.seed = RngStream(config.seed).Child("block", index).key();
    return BaseStructure(block, local);
  };
}

}  // namespace dpmrf
