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

#include "dpmrf/sampler.h"

#include <algorithm>
#include <optional>
#include <vector>

#include "dpmrf/error.h"
#include "dpmrf/parallel.h"
#include "dpmrf/rng.h"

namespace dpmrf {

Dataset ExactSample(const Model& model, std::size_t n, uint64_t seed,
                    int threads, std::size_t cap) {
  return ExactSample(ComputeExactDistribution(model, cap), n, seed, threads);
}

Dataset ExactSample(const ExactDistribution& dist, std::size_t n, uint64_t seed,
                    int threads) {
  std::vector<double> cdf(dist.num_states());
  double running = 0.0;
  for (std::size_t s = 0; s < cdf.size(); ++s) {
    running += dist.probs()[s];
    cdf[s] = running;
  }
  const int p = dist.num_vars();
  std::vector<int8_t> values(n * p);
  const RngStream root(seed);
  ParallelFor(n, threads, [&](std::size_t m) {
    RngStream stream = root.Child("sample", m);
    const double u = stream.Uniform() * running;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t index = static_cast<std::size_t>(it - cdf.begin());
    if (index >= cdf.size()) index = cdf.size() - 1;
    const auto state = dist.State(index);
    std::copy(state.begin(), state.end(), values.begin() + m * p);
  });
  return Dataset(p, dist.alphabet(), dist.binary(), std::move(values),
                 {"exact", seed});
}

namespace {

// Resamples one site in place.
class SiteSampler {
 public:
  explicit SiteSampler(const Model& model) : model_(model) {
    if (const auto* mrf = std::get_if<BinaryMrf>(&model)) mrf_.emplace(*mrf);
  }

  void Update(int site, std::vector<int8_t>& state, RngStream& stream) const {
    const double u = stream.Uniform();
    if (const auto* ising = std::get_if<IsingModel>(&model_)) {
      state[site] = u < IsingConditionalPlus(*ising, site, state) ? 1 : -1;
    } else if (const auto* pairwise = std::get_if<PairwiseModel>(&model_)) {
      const auto probs = PairwiseConditional(*pairwise, site, state);
      double running = 0.0;
      int symbol = static_cast<int>(probs.size()) - 1;
      for (std::size_t a = 0; a < probs.size(); ++a) {
        running += probs[a];
        if (u < running) {
          symbol = static_cast<int>(a);
          break;
        }
      }
      state[site] = static_cast<int8_t>(symbol);
    } else {
      state[site] = u < mrf_->PlusProbability(site, state) ? 1 : -1;
    }
  }

 private:
  const Model& model_;
  std::optional<MrfConditionals> mrf_;
};

}  // namespace

Dataset GibbsSample(const Model& model, std::size_t n, uint64_t seed,
                    const GibbsOptions& options) {
  Require(options.burn_in >= 0 && options.thin >= 0,
          "burn-in and thinning must be non-negative");
  const int p = NumVars(model);
  const int k = AlphabetSize(model);
  const bool binary = !std::holds_alternative<PairwiseModel>(model);
  const SiteSampler sampler(model);
  const int sweeps = options.burn_in + options.thin;
  std::vector<int8_t> values(n * p);
  const RngStream root(seed);
  ParallelFor(n, options.threads, [&](std::size_t m) {
    RngStream stream = root.Child("sample", m);
    std::vector<int8_t> state(p);
    for (int i = 0; i < p; ++i) {
      const int d = static_cast<int>(stream.NextU64() % static_cast<uint64_t>(k));
      state[i] = static_cast<int8_t>(binary ? 2 * d - 1 : d);
    }
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      for (int i = 0; i < p; ++i) sampler.Update(i, state, stream);
    }
    std::copy(state.begin(), state.end(), values.begin() + m * p);
  });
  return Dataset(p, k, binary, std::move(values), {"gibbs", seed});
}

ExactDistribution ApplyGibbsSiteUpdate(const Model& model,
                                       const ExactDistribution& dist, int site) {
  const int k = dist.alphabet();
  const bool binary = dist.binary();
  std::optional<MrfConditionals> mrf;
  if (const auto* m = std::get_if<BinaryMrf>(&model)) mrf.emplace(*m);
  std::vector<double> out(dist.num_states(), 0.0);
  for (std::size_t s = 0; s < dist.num_states(); ++s) {
    auto state = dist.State(s);
    std::vector<double> conditional(k);
    if (const auto* ising = std::get_if<IsingModel>(&model)) {
      const double plus = IsingConditionalPlus(*ising, site, state);
      conditional = {1.0 - plus, plus};
    } else if (const auto* pairwise = std::get_if<PairwiseModel>(&model)) {
      conditional = PairwiseConditional(*pairwise, site, state);
    } else {
      const double plus = mrf->PlusProbability(site, state);
      conditional = {1.0 - plus, plus};
    }
    for (int d = 0; d < k; ++d) {
      state[site] = static_cast<int8_t>(binary ? 2 * d - 1 : d);
      out[dist.Index(state)] += dist.probs()[s] * conditional[d];
    }
  }
  return ExactDistribution(dist.num_vars(), k, binary, std::move(out));
}

}  // namespace dpmrf
