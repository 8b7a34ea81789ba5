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

#include "dpmrf/privacy.h"

#include <cmath>
#include <sstream>

#include "dpmrf/error.h"
#include "gtest/gtest.h"

namespace dpmrf {
namespace {

TEST(ConversionTest, PureToZcdp) {
  EXPECT_EQ(PureToZcdp(0.0), 0.0);
  EXPECT_EQ(PureToZcdp(1.0), 0.5);
  EXPECT_EQ(PureToZcdp(2.0), 2.0);
  EXPECT_THROW(PureToZcdp(-1.0), Error);
}

TEST(ConversionTest, ZcdpToApprox) {
  EXPECT_EQ(ZcdpToApprox(0.0, 0.5), 0.0);
  EXPECT_NEAR(ZcdpToApprox(0.5, std::exp(-2.0)), 2.5, 1e-12);
  EXPECT_NEAR(ZcdpToApprox(0.125, std::exp(-8.0)), 2.125, 1e-12);
  EXPECT_THROW(ZcdpToApprox(1.0, 0.0), Error);
  EXPECT_THROW(ZcdpToApprox(1.0, 1.0), Error);
}

TEST(ConversionTest, Monotone) {
  double previous = -1.0;
  for (double rho = 0.01; rho < 10; rho *= 1.5) {
    const double eps = ZcdpToApprox(rho, 1e-6);
    EXPECT_GT(eps, previous);
    previous = eps;
  }
  previous = 1e300;
  for (double delta = 1e-12; delta < 0.5; delta *= 3) {
    const double eps = ZcdpToApprox(1.0, delta);
    EXPECT_LT(eps, previous);
    previous = eps;
  }
}

TEST(ConversionTest, PureRoundTripNeverUnderReports) {
  for (double eps : {0.1, 0.5, 1.0, 3.0}) {
    for (double delta : {1e-3, 1e-9, 1e-15}) {
      EXPECT_GE(ZcdpToApprox(PureToZcdp(eps), delta), eps * eps / 2);
    }
  }
}

TEST(ConversionTest, ApproxToZcdpInvertsZcdpToApprox) {
  for (double rho : {0.001, 0.1, 1.0, 7.0}) {
    for (double delta : {1e-2, 1e-6, 1e-10}) {
      EXPECT_NEAR(ApproxToZcdp(ZcdpToApprox(rho, delta), delta), rho, 1e-10 * (1 + rho));
    }
  }
}

TEST(AccountantTest, Examples) {
  Accountant a(1.0);
  a.Spend("a", 0.3);
  a.Spend("b", 0.7);
  EXPECT_NEAR(a.remaining(), 0.0, 1e-15);
  a.Spend("zero", 0.0);
  EXPECT_EQ(a.ledger().size(), 3u);
  EXPECT_EQ(a.ledger()[2].label, "zero");

  Accountant b(0.5);
  try {
    b.Spend("big", 0.6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExceeded);
  }
  EXPECT_TRUE(b.ledger().empty());
}

TEST(AccountantTest, SlackAllowsRoundingResidue) {
  Accountant a(1.0);
  for (int i = 0; i < 10; ++i) a.Spend("tenth", 0.1);
  EXPECT_NEAR(a.spent(), 1.0, 1e-12);
  EXPECT_THROW(a.Spend("more", 1e-9), Error);
}

TEST(AccountantTest, LedgerSumMatchesSpent) {
  Accountant a(1000.0);
  double sum = 0.0;
  for (int i = 1; i <= 997; ++i) {
    const double rho = 1.0 / (i * 3.0);
    a.Spend("x", rho);
    sum += rho;
  }
  double ledger_sum = 0.0;
  for (const auto& e : a.ledger()) ledger_sum += e.rho;
  EXPECT_NEAR(a.spent(), ledger_sum, 1e-12);
}

TEST(AccountantTest, CsvDump) {
  Accountant a(1.0);
  a.Spend("first", 0.25);
  std::ostringstream out;
  a.WriteCsv(out);
  EXPECT_EQ(out.str(), "label,rho\nfirst,0.25\n");
}

TEST(LaplaceTest, ScaleFormula) {
  EXPECT_NEAR(FrankWolfeNoiseScale(2.0, 2.0, 4, 100.0, 1.0), 0.08, 1e-15);
}

TEST(LaplaceTest, ZeroScaleIsExactlyZero) {
  RngStream rng(1);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(LaplaceNoise(0.0, rng), 0.0);
  EXPECT_THROW(LaplaceNoise(-1.0, rng), Error);
}

TEST(LaplaceTest, Moments) {
  RngStream rng(2);
  const double b = 1.7;
  const int n = 1000000;
  double sum = 0.0;
  int beyond_median = 0;
  for (int i = 0; i < n; ++i) {
    const double x = LaplaceNoise(b, rng);
    sum += x;
    beyond_median += std::abs(x) > b * std::log(2.0);
  }
  // Laplace(b) has standard deviation b sqrt(2).
  EXPECT_NEAR(sum / n, 0.0, 4 * b * std::sqrt(2.0) / std::sqrt(n));
  EXPECT_NEAR(static_cast<double>(beyond_median) / n, 0.5, 0.005);
}

TEST(LaplaceTest, StreamDeterministic) {
  RngStream a(3), b(3);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(LaplaceNoise(1.0, a), LaplaceNoise(1.0, b));
}

}  // namespace
}  // namespace dpmrf
