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

#include "dpmrf/models.h"

#include <cmath>
#include <vector>

#include "dpmrf/error.h"
#include "dpmrf/oracle.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace dpmrf {
namespace {

using testing::NaiveProbabilities;

double MaxDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

TEST(IsingModelTest, ValidatesSymmetryAndDiagonal) {
  Matrix a(2, 2);
  a(0, 1) = 0.3;
  EXPECT_THROW(IsingModel(a, {0, 0}), Error);
  a(1, 0) = 0.3;
  EXPECT_NO_THROW(IsingModel(a, {0, 0}));
  a(0, 0) = 0.1;
  EXPECT_THROW(IsingModel(a, {0, 0}), Error);
}

TEST(IsingWidthTest, Examples) {
  EXPECT_EQ(IsingWidth(IsingModel(3)), 0.0);
  IsingModel m(3);
  m.SetCoupling(0, 1, 0.3);
  m.SetCoupling(0, 2, -0.2);
  m.SetBias(0, 0.1);
  EXPECT_NEAR(IsingWidth(m), 0.6, 1e-15);
  EXPECT_NEAR(IsingWidth(MatchedPairsIsing(4, 0.5)), 0.5, 1e-15);
}

TEST(IsingMinEdgeTest, Examples) {
  IsingModel m(4);
  m.SetCoupling(0, 1, -0.4);
  EXPECT_NEAR(IsingMinEdge(m), 0.4, 1e-15);
  m.SetCoupling(0, 1, 0.3);
  m.SetCoupling(2, 3, 0.7);
  EXPECT_NEAR(IsingMinEdge(m), 0.3, 1e-15);
  try {
    IsingMinEdge(IsingModel(4));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoEdges);
  }
}

TEST(PairwiseWidthTest, Examples) {
  EXPECT_EQ(PairwiseWidth(PairwiseModel(3, 3)), 0.0);
  PairwiseModel m(2, 2);
  m.SetWeight(0, 1, Matrix(2, 2, {0.2, -0.2, -0.2, 0.2}));
  EXPECT_NEAR(PairwiseWidth(m), 0.2, 1e-15);
  m.SetTheta(0, std::vector<double>{0.1, 0.0});
  EXPECT_NEAR(PairwiseWidth(m), 0.3, 1e-15);
}

TEST(PairwiseModelTest, TransposedAccess) {
  PairwiseModel m(3, 3);
  Matrix w(3, 3);
  w(0, 2) = 0.7;
  m.SetWeight(2, 0, w);  // rows index the symbol of variable 2
  EXPECT_EQ(m.weight(2, 0, 0, 2), 0.7);
  EXPECT_EQ(m.weight(0, 2, 2, 0), 0.7);
  EXPECT_EQ(m.WeightMatrix(0, 2)(2, 0), 0.7);
}

TEST(CenterPairwiseTest, Examples) {
  PairwiseModel m(2, 2);
  m.SetWeight(0, 1, Matrix(2, 2, {1, 0, 0, 1}));
  const PairwiseModel c = CenterPairwise(m);
  EXPECT_EQ(c.WeightMatrix(0, 1), Matrix(2, 2, {0.5, -0.5, -0.5, 0.5}));
  EXPECT_LE(MaxDiff(NaiveProbabilities(m), NaiveProbabilities(c)), 1e-12);

  PairwiseModel centered(2, 2);
  centered.SetWeight(0, 1, Matrix(2, 2, {0.2, -0.2, -0.2, 0.2}));
  const PairwiseModel again = CenterPairwise(centered);
  EXPECT_EQ(again.WeightMatrix(0, 1), centered.WeightMatrix(0, 1));
  EXPECT_EQ(again.theta(), centered.theta());
}

TEST(CenterPairwiseTest, ZeroSumsIdempotentAndDistributionPreserving) {
  RngStream rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int p = 2 + static_cast<int>(rng.NextU64() % 3);
    const int k = 2 + static_cast<int>(rng.NextU64() % 2);
    const PairwiseModel m = testing::RandomPairwise(p, k, 1.5, rng);
    const PairwiseModel c = CenterPairwise(m);
    for (const auto& [edge, w] : c.weights()) {
      for (int a = 0; a < k; ++a) {
        double row = 0.0, col = 0.0;
        for (int b = 0; b < k; ++b) {
          row += w(a, b);
          col += w(b, a);
        }
        EXPECT_NEAR(row, 0.0, 1e-12);
        EXPECT_NEAR(col, 0.0, 1e-12);
      }
    }
    EXPECT_LE(TvDistance(ComputeExactDistribution(m), ComputeExactDistribution(c)), 1e-10);
    const PairwiseModel cc = CenterPairwise(c);
    for (const auto& [edge, w] : c.weights()) {
      const Matrix w2 = cc.WeightMatrix(edge.first, edge.second);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) EXPECT_NEAR(w2(a, b), w(a, b), 1e-12);
      }
    }
  }
}

TEST(MrfWidthTest, Examples) {
  EXPECT_EQ(MrfWidth(BinaryMrf(3, MultilinearPolynomial(3))), 0.0);
  const MultilinearPolynomial h(3, {{{0, 1, 2}, 0.5}, {{0}, 0.2}, {{1}, -0.3}});
  EXPECT_NEAR(MrfWidth(BinaryMrf(3, h)), 0.8, 1e-15);
}

TEST(MrfWidthTest, MatchesIsingWidthThroughConversion) {
  RngStream rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const IsingModel m = testing::RandomIsing(5, 1.3, rng);
    EXPECT_NEAR(MrfWidth(ToMrf(m)), IsingWidth(m), 1e-12);
  }
}

TEST(BinaryMrfTest, RejectsDegreeAboveOrder) {
  const MultilinearPolynomial h(3, {{{0, 1, 2}, 0.5}});
  EXPECT_THROW(BinaryMrf(2, h), Error);
}

TEST(ToMrfTest, Examples) {
  EXPECT_TRUE(ToMrf(IsingModel(3)).factorization().is_zero());
  IsingModel m(2);
  m.SetCoupling(0, 1, 0.5);
  EXPECT_EQ(ToMrf(m).factorization(), MultilinearPolynomial(2, {{{0, 1}, 0.5}}));
  EXPECT_EQ(ToMrf(m).order(), 2);
}

TEST(ToMrfTest, DistributionsAgree) {
  RngStream rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 2 + static_cast<int>(rng.NextU64() % 5);
    const IsingModel m = testing::RandomIsing(p, 1.5, rng);
    EXPECT_LE(MaxDiff(ComputeExactDistribution(m).probs(), ComputeExactDistribution(ToMrf(m)).probs()),
              1e-12);
  }
}

TEST(IsingToPairwiseTest, SameDistribution) {
  RngStream rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const IsingModel m = testing::RandomIsing(4, 1.2, rng);
    // Binary state index d maps to spin 2d-1 and symbol d, so the tables align.
    EXPECT_LE(MaxDiff(ComputeExactDistribution(m).probs(),
                      ComputeExactDistribution(IsingToPairwise(m)).probs()),
              1e-12);
  }
}

// The fixture takes A = eta under the model definition exp(sum A z_i z_j), so
// each pair has E[Z_1 Z_2] = tanh(eta) and Pr(++) = e^{2 eta}/(2(e^{2 eta}+1)).
TEST(MatchedPairsTest, CellProbabilities) {
  const std::vector<double> probs = ComputeExactDistribution(MatchedPairsIsing(2, std::log(2.0))).probs();
  // State order: (-,-), (+,-), (-,+), (+,+).
  EXPECT_NEAR(probs[3], 0.4, 1e-12);
  EXPECT_NEAR(probs[0], 0.4, 1e-12);
  EXPECT_NEAR(probs[1], 0.1, 1e-12);
  EXPECT_NEAR(probs[2], 0.1, 1e-12);
  const std::vector<double> uniform = ComputeExactDistribution(MatchedPairsIsing(2, 0.0)).probs();
  for (double v : uniform) EXPECT_NEAR(v, 0.25, 1e-15);
  EXPECT_NEAR(ExactParity(MatchedPairsIsing(4, 0.5), MonomialIndex{0, 1}), std::tanh(0.5), 1e-12);
}

TEST(MatchedPairsTest, StructureAndErrors) {
  const IsingModel m = MatchedPairsIsing(6, 0.8);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const bool paired = (i / 2 == j / 2) && i != j;
      EXPECT_EQ(m.coupling(i, j), paired ? 0.8 : 0.0);
    }
    EXPECT_EQ(m.bias()[i], 0.0);
  }
  EXPECT_THROW(MatchedPairsIsing(5, 0.3), Error);
  const std::vector<double> etas{0.1, 0.2};
  const IsingModel per_pair = MatchedPairsIsing(etas);
  EXPECT_EQ(per_pair.coupling(0, 1), 0.1);
  EXPECT_EQ(per_pair.coupling(2, 3), 0.2);
}

TEST(MatchedPairsTest, PairsAreIndependent) {
  const IsingModel m = MatchedPairsIsing(4, 0.7);
  const ExactDistribution d = ComputeExactDistribution(m);
  EXPECT_NEAR(ExactParity(d, MonomialIndex{0, 2}), 0.0, 1e-12);
  // Joint over the two pairs factorizes.
  for (std::size_t s = 0; s < d.num_states(); ++s) {
    const auto z = d.State(s);
    double first = 0.0, second = 0.0;
    for (std::size_t t = 0; t < d.num_states(); ++t) {
      const auto y = d.State(t);
      if (y[0] == z[0] && y[1] == z[1]) first += d.probs()[t];
      if (y[2] == z[2] && y[3] == z[3]) second += d.probs()[t];
    }
    EXPECT_NEAR(d.probs()[s], first * second, 1e-12);
  }
}

TEST(DeltaUnbiasedBoundTest, Examples) {
  EXPECT_NEAR(DeltaUnbiasedBound(IsingModel(3)), 0.5, 1e-15);
  PairwiseModel pw(2, 3);
  pw.SetTheta(0, std::vector<double>{1.0, 0.0, 0.0});
  EXPECT_NEAR(DeltaUnbiasedBound(pw), std::exp(-2.0) / 3.0, 1e-15);
  EXPECT_NEAR(DeltaUnbiasedBound(pw), 0.04511, 1e-5);
  const BinaryMrf mrf(1, MultilinearPolynomial(2, {{{0}, 0.5}}));
  EXPECT_NEAR(DeltaUnbiasedBound(mrf), std::exp(-1.0) / 2.0, 1e-15);
  EXPECT_NEAR(DeltaUnbiasedBound(mrf), 0.18394, 1e-5);
}

void CheckUnbiased(const Model& model) {
  const ExactDistribution d = ComputeExactDistribution(model);
  const double bound = DeltaUnbiasedBound(model);
  const int k = AlphabetSize(model);
  const bool binary = !std::holds_alternative<PairwiseModel>(model);
  for (std::size_t s = 0; s < d.num_states(); ++s) {
    const auto z = d.State(s);
    for (int i = 0; i < NumVars(model); ++i) {
      for (int a = 0; a < k; ++a) {
        const int value = binary ? 2 * a - 1 : a;
        ASSERT_GE(ExactConditional(d, i, value, z), bound - 1e-12);
      }
    }
  }
}

TEST(DeltaUnbiasedPropertyTest, EnumerationCertifiesBound) {
  RngStream rng(25);
  for (int trial = 0; trial < 15; ++trial) {
    CheckUnbiased(testing::RandomIsing(4, 2.0, rng));
    CheckUnbiased(testing::RandomPairwise(3, 3, 2.0, rng));
    CheckUnbiased(testing::RandomMrf(5, 3, 2.0, rng));
  }
}

TEST(DependencyEdgesTest, Families) {
  EXPECT_EQ(DependencyEdges(MatchedPairsIsing(4, 0.3)), (EdgeSet{{0, 1}, {2, 3}}));
  const MultilinearPolynomial h(4, {{{0, 2, 3}, 0.5}, {{1}, 0.2}});
  EXPECT_EQ(DependencyEdges(BinaryMrf(3, h)), (EdgeSet{{0, 2}, {0, 3}, {2, 3}}));
}

TEST(ConditionalsTest, IsingExample) {
  IsingModel m(2);
  m.SetCoupling(0, 1, 0.5);
  const std::vector<Spin> x{1, 1};
  EXPECT_NEAR(IsingConditionalPlus(m, 0, x), 1.0 / (1.0 + std::exp(-1.0)), 1e-15);
  EXPECT_NEAR(IsingConditionalPlus(m, 0, x), 0.731059, 1e-6);
}

TEST(SigmoidTest, StableAtExtremes) {
  EXPECT_EQ(Sigmoid(0.0), 0.5);
  EXPECT_NEAR(Sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_EQ(Sigmoid(800.0), 1.0);
  EXPECT_NEAR(Sigmoid(2.0) + Sigmoid(-2.0), 1.0, 1e-15);
}

}  // namespace
}  // namespace dpmrf
