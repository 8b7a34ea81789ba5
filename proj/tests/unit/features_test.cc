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

#include "dpmrf/features.h"

#include <cmath>

#include "dpmrf/models.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace dpmrf {
namespace {

double Dot(const Matrix& a, const Matrix& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) total += a.data()[i] * b.data()[i];
  return total;
}

TEST(OneHotTest, Examples) {
  const std::vector<int8_t> s = {1, 0};
  EXPECT_EQ(OneHotEncode(s, 3), Matrix(2, 3, {0, 1, 0, 1, 0, 0}));
  const std::vector<int8_t> ones(5, 0);
  const Matrix m = OneHotEncode(ones, 2);
  for (int r = 0; r < 5; ++r) {
    EXPECT_EQ(m(r, 0), 1.0);
    EXPECT_EQ(m(r, 1), 0.0);
  }
}

TEST(OneHotTest, RowsSumToOne) {
  RngStream rng(60);
  std::vector<int8_t> s(30);
  for (auto& v : s) v = static_cast<int8_t>(rng.NextU64() % 4);
  const Matrix m = OneHotEncode(s, 4);
  for (int r = 0; r < 30; ++r) {
    double sum = 0.0;
    for (int c = 0; c < 4; ++c) sum += m(r, c);
    EXPECT_EQ(sum, 1.0);
    EXPECT_EQ(m(r, s[r]), 1.0);
  }
}

TEST(CenterRowsTest, HandExample) {
  const Matrix u = CenterRowsForOneHot(Matrix(2, 2, {0.4, 0.2, 0.3, 0.1}));
  const Matrix expected(2, 2, {0.1, -0.1, 0.6, 0.4});
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(u.data()[i], expected.data()[i], 1e-15);
}

TEST(CenterRowsTest, CenteredInputIsFixed) {
  const Matrix w(3, 2, {0.5, -0.5, -1.0, 1.0, 0.3, 0.7});
  EXPECT_EQ(CenterRowsForOneHot(w), w);
}

TEST(CenterRowsTest, PreservesInnerProductsWithOneHotEncodings) {
  RngStream rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 2 + trial % 4;
    const int k = 2 + trial % 3;
    Matrix w(p, k);
    for (int r = 0; r < p; ++r) {
      for (int c = 0; c < k; ++c) w(r, c) = testing::Uniform(rng, -1, 1);
    }
    std::vector<int8_t> s(p);
    for (int j = 0; j + 1 < p; ++j) s[j] = static_cast<int8_t>(rng.NextU64() % k);
    s[p - 1] = 0;
    const Matrix x = OneHotEncode(s, k);
    const Matrix u = CenterRowsForOneHot(w);
    EXPECT_NEAR(Dot(u, x), Dot(w, x), 1e-12);
    for (int r = 0; r + 1 < p; ++r) {
      double mean = 0.0;
      for (int c = 0; c < k; ++c) mean += u(r, c);
      EXPECT_NEAR(mean, 0.0, 1e-12);
    }
  }
}

TEST(NodeFeatureMapTest, IsingOrder) {
  const NodeFeatureMap map = NodeFeatureMap::Ising(4, 1);
  ASSERT_EQ(map.size(), 4u);
  EXPECT_EQ(map.monomials()[0], (MonomialIndex{0}));
  EXPECT_EQ(map.monomials()[1], (MonomialIndex{2}));
  EXPECT_EQ(map.monomials()[2], (MonomialIndex{3}));
  EXPECT_TRUE(map.monomials()[3].empty());
  const std::vector<Spin> z = {-1, 1, 1, -1};
  std::vector<double> x(4);
  map.Encode(z, x);
  EXPECT_EQ(x, (std::vector<double>{-1, 1, -1, 1}));
}

TEST(NodeFeatureMapTest, MrfOrderAndCount) {
  const NodeFeatureMap map = NodeFeatureMap::Mrf(5, 2, 3);
  EXPECT_EQ(map.size(), CountMrfFeatures(5, 3));
  EXPECT_EQ(map.size(), 1u + 4u + 6u);
  EXPECT_TRUE(map.monomials()[0].empty());
  for (std::size_t f = 1; f < map.size(); ++f) {
    EXPECT_LT(map.monomials()[f - 1], map.monomials()[f]);
    EXPECT_FALSE(map.monomials()[f].Contains(2));
    EXPECT_EQ(map.IndexOf(map.monomials()[f]), static_cast<int>(f));
  }
  EXPECT_EQ(map.IndexOf(MonomialIndex{2}), -1);
  EXPECT_EQ(CountMrfFeatures(20, 5), 1u + 19u + 171u + 969u + 3876u);
}

// Loading the true parameters into the regression weights reproduces the
// model's conditional logit.
TEST(FeatureReadbackTest, IsingLogit) {
  RngStream rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 2 + trial % 4;
    IsingModel m = testing::RandomIsing(p, 1.5, rng);
    for (int i = 0; i < p; ++i) m.SetBias(i, testing::Uniform(rng, -0.5, 0.5));
    const auto state = testing::AllStates(p, 2, true)[rng.NextU64() % (1u << p)];
    for (int i = 0; i < p; ++i) {
      const NodeFeatureMap map = NodeFeatureMap::Ising(p, i);
      std::vector<double> x(map.size());
      map.Encode(state, x);
      double logit = 0.0;
      for (std::size_t f = 0; f < map.size(); ++f) {
        const auto& I = map.monomials()[f];
        const double w = I.empty() ? 2 * m.bias()[i] : 2 * m.coupling(i, I.indices()[0]);
        logit += w * x[f];
      }
      EXPECT_NEAR(Sigmoid(logit), IsingConditionalPlus(m, i, state), 1e-12);
    }
  }
}

TEST(FeatureReadbackTest, MrfLogit) {
  RngStream rng(63);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 3 + trial % 3;
    const int t = 1 + trial % 3;
    const BinaryMrf m = testing::RandomMrf(p, t, 1.0, rng);
    const MrfConditionals conditionals(m);
    const auto state = testing::AllStates(p, 2, true)[rng.NextU64() % (1u << p)];
    for (int i = 0; i < p; ++i) {
      const NodeFeatureMap map = NodeFeatureMap::Mrf(p, i, t);
      std::vector<double> x(map.size());
      map.Encode(state, x);
      double logit = 0.0;
      for (std::size_t f = 0; f < map.size(); ++f) {
        logit += 2 * m.factorization().Coefficient(map.monomials()[f].Union(MonomialIndex{i})) * x[f];
      }
      EXPECT_NEAR(Sigmoid(logit), conditionals.PlusProbability(i, state), 1e-12);
    }
  }
}

TEST(FeatureReadbackTest, PairwiseLogitSurvivesCentering) {
  RngStream rng(64);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 2 + trial % 3;
    const int k = 2 + trial % 3;
    PairwiseModel m = testing::RandomPairwise(p, k, 1.5, rng);
    std::vector<int8_t> state(p);
    for (auto& s : state) s = static_cast<int8_t>(rng.NextU64() % k);
    const int i = static_cast<int>(rng.NextU64() % p);
    const int u = 0;
    const int v = 1 + static_cast<int>(rng.NextU64() % (k - 1));
    // Rows are the other nodes in order, then the constant encoded as symbol 0.
    Matrix w(p, k);
    std::vector<int8_t> encoded;
    int slot = 0;
    for (int j = 0; j < p; ++j) {
      if (j == i) continue;
      for (int b = 0; b < k; ++b) w(slot, b) = m.weight(i, j, u, b) - m.weight(i, j, v, b);
      encoded.push_back(state[j]);
      ++slot;
    }
    w(p - 1, 0) = m.theta(i, u) - m.theta(i, v);
    encoded.push_back(0);
    const Matrix x = OneHotEncode(encoded, k);
    const double expected = PairwisePairConditional(m, i, u, v, state);
    EXPECT_NEAR(Sigmoid(Dot(w, x)), expected, 1e-12);
    EXPECT_NEAR(Sigmoid(Dot(CenterRowsForOneHot(w), x)), expected, 1e-12);
  }
}

}  // namespace
}  // namespace dpmrf
