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
#include <string>

#include "dpmrf/error.h"
#include "dpmrf/format.h"

namespace dpmrf {

void ValidateBudget(const PrivacyBudget& budget) {
  if (const auto* pure = std::get_if<PureBudget>(&budget)) {
    Require(pure->epsilon >= 0.0, "epsilon must be non-negative");
  } else if (const auto* zcdp = std::get_if<ZcdpBudget>(&budget)) {
    Require(zcdp->rho >= 0.0, "rho must be non-negative");
  } else {
    const auto& approx = std::get<ApproxBudget>(budget);
    Require(approx.epsilon >= 0.0, "epsilon must be non-negative");
    Require(approx.delta >= 0.0 && approx.delta < 1.0, "delta must lie in [0, 1)");
  }
}

double PureToZcdp(double epsilon) {
  Require(epsilon >= 0.0, "epsilon must be non-negative");
  return 0.5 * epsilon * epsilon;
}

double ZcdpToApprox(double rho, double delta) {
  Require(rho >= 0.0, "rho must be non-negative");
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  return rho + 2.0 * std::sqrt(rho * std::log(1.0 / delta));
}

double ApproxToZcdp(double epsilon, double delta) {
  Require(epsilon >= 0.0, "epsilon must be non-negative");
  Require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  const double log_term = std::log(1.0 / delta);
  const double root = std::sqrt(log_term + epsilon) - std::sqrt(log_term);
  return root * root;
}

double FrankWolfeNoiseScale(double lipschitz, double constraint_norm,
                            int iterations, double n, double rho) {
  Require(n > 0 && rho > 0 && iterations >= 1, "noise scale needs n, rho, T > 0");
  return lipschitz * constraint_norm * std::sqrt(static_cast<double>(iterations)) /
         (n * std::sqrt(rho));
}

double LaplaceNoise(double scale, RngStream& rng) {
  Require(scale >= 0.0, "Laplace scale must be non-negative");
  if (scale == 0.0) return 0.0;
  // u uniform on (-1/2, 1/2); X = -b sgn(u) log(1 - 2|u|).
  const double u = rng.UniformOpen() - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0 ? -magnitude : magnitude;
}

Accountant::Accountant(double total_rho) : total_(total_rho) {
  Require(total_rho >= 0.0, "total rho must be non-negative");
}

bool Accountant::CanSpend(double rho) const {
  return rho <= remaining() + kSlack;
}

void Accountant::Spend(const std::string& label, double rho) {
  Require(rho >= 0.0 && std::isfinite(rho), "spend must be finite and non-negative");
  if (!CanSpend(rho)) {
    Fail(ErrorCode::kBudgetExceeded,
         "spend of " + FormatDouble(rho) + " for '" + label +
             "' exceeds remaining budget " + FormatDouble(remaining()));
  }
  ledger_.push_back({label, rho});
  // Neumaier summation.
  const double t = sum_ + rho;
  if (std::abs(sum_) >= std::abs(rho)) {
    compensation_ += (sum_ - t) + rho;
  } else {
    compensation_ += (rho - t) + sum_;
  }
  sum_ = t;
}

double Accountant::spent() const { return sum_ + compensation_; }

void Accountant::WriteCsv(std::ostream& out) const {
  out << "label,rho\n";
  for (const auto& entry : ledger_) {
    out << entry.label << ',' << FormatDouble(entry.rho) << '\n';
  }
}

}  // namespace dpmrf
