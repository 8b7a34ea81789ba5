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

#ifndef DPMRF_SAMPLER_H_
#define DPMRF_SAMPLER_H_

#include <cstddef>
#include <cstdint>

#include "dpmrf/dataset.h"
#include "dpmrf/models.h"
#include "dpmrf/oracle.h"

namespace dpmrf {

// Sample m uses the stream RngStream(seed).Child("sample", m), so output is
// identical for every thread count.
Dataset ExactSample(const Model& model, std::size_t n, uint64_t seed,
                    int threads = 1, std::size_t cap = DefaultStateCap());

// Inverse-CDF draws from a precomputed table.
Dataset ExactSample(const ExactDistribution& dist, std::size_t n, uint64_t seed,
                    int threads = 1);

struct GibbsOptions {
  int burn_in = 100;  // sweeps from a fresh uniform start
  int thin = 0;       // extra sweeps; each sample is its own chain
  int threads = 1;
};

// Fresh-restart Gibbs: every retained sample runs its own chain for
// burn_in + thin systematic sweeps using the closed-form conditionals.
Dataset GibbsSample(const Model& model, std::size_t n, uint64_t seed,
                    const GibbsOptions& options = {});

// One systematic-scan site update applied to a full probability table:
// returns the table after resampling coordinate `site` from its conditional.
// Used to check that the Gibbs kernel preserves the exact distribution.
ExactDistribution ApplyGibbsSiteUpdate(const Model& model,
                                       const ExactDistribution& dist, int site);

}  // namespace dpmrf

#endif  // DPMRF_SAMPLER_H_
