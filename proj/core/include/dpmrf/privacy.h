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

#ifndef DPMRF_PRIVACY_H_
#define DPMRF_PRIVACY_H_

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "dpmrf/rng.h"

namespace dpmrf {

struct PureBudget {
  double epsilon = 0.0;
};
struct ZcdpBudget {
  double rho = 0.0;
};
struct ApproxBudget {
  double epsilon = 0.0;
  double delta = 0.0;
};
using PrivacyBudget = std::variant<PureBudget, ZcdpBudget, ApproxBudget>;

// Throws kInvalidArgument unless eps, rho >= 0 and 0 <= delta < 1.
void ValidateBudget(const PrivacyBudget& budget);

// (eps, 0)-DP implies eps^2/2-zCDP.
double PureToZcdp(double epsilon);

// rho-zCDP implies (rho + 2 sqrt(rho log(1/delta)), delta)-DP for
// delta in (0, 1).
double ZcdpToApprox(double rho, double delta);

// Largest rho whose (eps, delta) conversion above does not exceed epsilon.
double ApproxToZcdp(double epsilon, double delta);

// Laplace scale used by private Frank-Wolfe:
// L1 * ||C||_1 * sqrt(T) / (n * sqrt(rho)).
double FrankWolfeNoiseScale(double lipschitz, double constraint_norm,
                            int iterations, double n, double rho);

// Mean-zero Laplace draw by inverse CDF from one uniform. Scale 0 returns 0
// without consuming randomness.
double LaplaceNoise(double scale, RngStream& rng);

// zCDP budget ledger. Spends compose additively; an overdraft throws
// kBudgetExceeded and leaves the ledger untouched, so callers must spend
// before looking at data.
class Accountant {
 public:
  struct Entry {
    std::string label;
    double rho;
  };

  static constexpr double kSlack = 1e-12;

  explicit Accountant(double total_rho);

  void Spend(const std::string& label, double rho);
  bool CanSpend(double rho) const;

  double total() const { return total_; }
  // Compensated sum of all entries.
  double spent() const;
  double remaining() const { return total_ - spent(); }
  const std::vector<Entry>& ledger() const { return ledger_; }

  // "label,rho" lines with a header.
  void WriteCsv(std::ostream& out) const;

 private:
  double total_;
  std::vector<Entry> ledger_;
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace dpmrf

#endif  // DPMRF_PRIVACY_H_
