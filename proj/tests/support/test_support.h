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

#ifndef DPMRF_TESTS_SUPPORT_TEST_SUPPORT_H_
#define DPMRF_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <vector>

#include "dpmrf/frank_wolfe.h"
#include "dpmrf/models.h"
#include "dpmrf/rng.h"

namespace dpmrf::testing {

// Random models whose width is exactly `width` (rescaled after drawing).
IsingModel RandomIsing(int p, double width, RngStream& rng, double edge_prob = 0.7);
PairwiseModel RandomPairwise(int p, int k, double width, RngStream& rng,
                             double edge_prob = 0.7);
BinaryMrf RandomMrf(int p, int t, double width, RngStream& rng, int terms = 8);

// Every state of S^p in mixed-radix little-endian order; binary states use
// spins -1/+1, categorical states 0..k-1.
std::vector<std::vector<int8_t>> AllStates(int p, int k, bool binary);

// Unnormalized energy computed straight from the model fields, without the
// library's LogPotential.
double NaiveEnergy(const Model& model, const std::vector<int8_t>& state);

// Normalized probabilities by naive exponentiation (small models only).
std::vector<double> NaiveProbabilities(const Model& model);

double Uniform(RngStream& rng, double lo, double hi);

// Weighted mean logistic loss computed row by row with log1p/exp.
double NaiveLogisticLoss(const LogisticProblem& problem, const std::vector<double>& w);

// Minimum of the loss over the 2-D l1 ball of the given radius: a 1e-2 grid
// followed by a 1e-3 grid around the best coarse point.
double GridSearchMinimum2D(const LogisticProblem& problem, double radius);

}  // namespace dpmrf::testing

#endif  // DPMRF_TESTS_SUPPORT_TEST_SUPPORT_H_
