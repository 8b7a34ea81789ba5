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

#include <cmath>

#include "dpmrf/error.h"
#include "dpmrf/oracle.h"
#include "dpmrf/query_release.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace dpmrf {
namespace {

double PairCell(const Dataset& d, int a, int b, int8_t va, int8_t vb) {
  double count = 0;
  for (std::size_t r = 0; r < d.num_rows(); ++r) count += d.row(r)[a] == va && d.row(r)[b] == vb;
  return count / d.num_rows();
}

TEST(ExactSampleTest, EmptyAndDeterministic) {
  const IsingModel m = MatchedPairsIsing(2, std::log(2.0));
  EXPECT_EQ(ExactSample(m, 0, 1).num_rows(), 0u);
  EXPECT_EQ(ExactSample(m, 1000, 5), ExactSample(m, 1000, 5));
  EXPECT_NE(ExactSample(m, 1000, 5), ExactSample(m, 1000, 6));
}

TEST(ExactSampleTest, IndependentOfThreadCount) {
  const PairwiseModel m = CenterPairwise(PairwiseModel(3, 3));
  EXPECT_EQ(ExactSample(m, 2000, 9, 1), ExactSample(m, 2000, 9, 4));
}

TEST(ExactSampleTest, CellFrequencyMatchesOracle) {
  const IsingModel m = MatchedPairsIsing(2, std::log(2.0));
  const std::size_t n = 100000;
  const Dataset d = ExactSample(m, n, 17);
  const double p = 0.4;
  EXPECT_NEAR(PairCell(d, 0, 1, 1, 1), p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(ExactSampleTest, RespectsCap) {
  EXPECT_THROW(ExactSample(IsingModel(12), 10, 1, 1, 1024), Error);
}

TEST(GibbsSampleTest, ZeroWidthIsUniform) {
  const std::size_t n = 20000;
  const Dataset d = GibbsSample(IsingModel(3), n, 2, GibbsOptions{5, 0, 1});
  const ParityTable q = EmpiricalParities(d, 2);
  EXPECT_NEAR(q.Get(MonomialIndex{0, 1}), 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(q.Get(MonomialIndex{2}), 0.0, 4.0 / std::sqrt(n));
}

TEST(GibbsSampleTest, MatchedPairsParity) {
  const Dataset d = GibbsSample(MatchedPairsIsing(2, std::log(2.0)), 100000, 3,
                                GibbsOptions{50, 0, 1});
  EXPECT_NEAR(EmpiricalParities(d, 2).Get(MonomialIndex{0, 1}), 0.6, 0.02);
}

TEST(GibbsSampleTest, TwelveSiteIsingParities) {
  RngStream rng(51);
  const IsingModel m = testing::RandomIsing(12, 1.0, rng, 0.3);
  const Dataset d = GibbsSample(m, 100000, 4, GibbsOptions{100, 0, 1});
  const ParityTable empirical = EmpiricalParities(d, 2);
  const ParityTable exact = DistributionParities(ComputeExactDistribution(m), 2);
  EXPECT_LE(empirical.MaxAbsDifference(exact), 0.03);
}

TEST(GibbsSampleTest, Deterministic) {
  RngStream rng(52);
  const BinaryMrf m = testing::RandomMrf(5, 3, 1.0, rng);
  EXPECT_EQ(GibbsSample(m, 500, 8, GibbsOptions{20, 1, 1}),
            GibbsSample(m, 500, 8, GibbsOptions{20, 1, 3}));
}

TEST(GibbsKernelTest, SiteUpdateLeavesDistributionInvariant) {
  RngStream rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<Model> models = {testing::RandomIsing(4, 2.0, rng),
                                       testing::RandomPairwise(3, 3, 2.0, rng),
                                       testing::RandomMrf(4, 3, 2.0, rng)};
    for (const Model& m : models) {
      const ExactDistribution d = ComputeExactDistribution(m);
      for (int site = 0; site < NumVars(m); ++site) {
        const ExactDistribution after = ApplyGibbsSiteUpdate(m, d, site);
        for (std::size_t s = 0; s < d.num_states(); ++s) {
          ASSERT_NEAR(after.probs()[s], d.probs()[s], 1e-10);
        }
      }
    }
  }
}

TEST(GibbsKernelTest, SiteUpdateMovesOtherDistributions) {
  // Applied to a point mass the kernel must spread mass along the site.
  const IsingModel m = MatchedPairsIsing(2, 0.5);
  const ExactDistribution point(2, 2, true, {1.0, 0.0, 0.0, 0.0});
  const ExactDistribution after = ApplyGibbsSiteUpdate(m, point, 0);
  EXPECT_GT(after.probs()[1], 0.0);
  EXPECT_NEAR(after.probs()[0] + after.probs()[1], 1.0, 1e-12);
}

}  // namespace
}  // namespace dpmrf
