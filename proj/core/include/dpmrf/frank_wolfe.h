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

#ifndef DPMRF_FRANK_WOLFE_H_
#define DPMRF_FRANK_WOLFE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpmrf/privacy.h"
#include "dpmrf/rng.h"

namespace dpmrf {

// Weighted logistic-regression data: rows x with ||x||_inf <= 1, labels in
// {-1,+1}, and a non-negative multiplicity per row. The loss is the
// multiplicity-weighted mean of log(1 + exp(-y <w, x>)).
class LogisticProblem {
 public:
  explicit LogisticProblem(int dim) : dim_(dim) {}

  void AddRow(std::span<const double> x, int label, double weight = 1.0);

  int dim() const { return dim_; }
  std::size_t num_rows() const { return labels_.size(); }
  // Sum of multiplicities; this is the n of the noise scale.
  double total_weight() const { return total_weight_; }
  std::span<const double> row(std::size_t r) const {
    return {features_.data() + r * dim_, static_cast<std::size_t>(dim_)};
  }
  double label(std::size_t r) const { return labels_[r]; }
  double weight(std::size_t r) const { return weights_[r]; }

 private:
  int dim_;
  std::vector<double> features_;
  std::vector<double> labels_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
};

double LogisticLoss(const LogisticProblem& problem, std::span<const double> w);
std::vector<double> LogisticGradient(const LogisticProblem& problem,
                                     std::span<const double> w);

// The l1 ball {w : ||w||_1 <= radius} = conv{+-radius e_i}. Vertex 2i is
// +radius e_i and vertex 2i+1 is -radius e_i.
struct L1Ball {
  int dim = 0;
  double radius = 1.0;
  int num_vertices() const { return 2 * dim; }
  double norm_bound() const { return radius; }
};

// Iteration counts. The radius form max(1, round(r^{2/3} (n sqrt(rho))^{2/3}))
// is the default; the curvature form divides Gamma^{2/3} (n sqrt(rho))^{2/3} by
// (L1 ||C||_1)^{2/3}.
int DefaultIterations(double radius, double n, double rho);
int CurvatureIterations(double curvature, double lipschitz, double constraint_norm,
                        double n, double rho);

struct FrankWolfeConfig {
  int iterations = 1;         // T; the loop performs T - 1 updates
  double lipschitz = 2.0;     // L1 with respect to the l1 norm
  double curvature = 1.0;     // Gamma bound (reporting only)
  double rho = 0.0;           // zCDP budget charged once per call
  bool non_private = false;   // zero noise, accountant untouched
  bool prepaid = false;       // rho was already charged by the caller
  RngStream rng{0};
  std::optional<std::vector<double>> initial;  // defaults to the origin
  bool record_iterates = false;
};

struct FrankWolfeResult {
  std::vector<double> weights;
  int iterations = 0;
  double noise_scale = 0.0;
  std::vector<std::vector<double>> iterates;  // w_1 .. w_T when recorded
};

// Private Frank-Wolfe over an l1 ball. Each update adds independent
// Laplace(L1 ||C||_1 sqrt(T) / (n sqrt(rho))) noise to every vertex score
// <s, grad L(w)>, moves toward the noisy argmin (ties to the lowest vertex)
// with step 2/(t+2). The full rho is charged to `accountant` before the data
// is read. Throws kInvalidArgument for an empty problem.
FrankWolfeResult PrivateFrankWolfe(const LogisticProblem& problem,
                                   const L1Ball& constraint,
                                   const FrankWolfeConfig& config,
                                   Accountant* accountant,
                                   const std::string& label = "frank-wolfe");

struct SparseLogisticOptions {
  double rho = 0.0;
  bool non_private = false;
  bool prepaid = false;
  std::optional<int> iterations;  // overrides the default rule
  RngStream rng{0};
  std::string label = "sparse-logistic";
};

// Frank-Wolfe with L1 = 2, Gamma = radius^2 and the default iteration
// count. Non-private fits use rho = 1 in the iteration formula.
FrankWolfeResult SparseLogisticFit(const LogisticProblem& problem, double radius,
                                   const SparseLogisticOptions& options,
                                   Accountant* accountant);

}  // namespace dpmrf

#endif  // DPMRF_FRANK_WOLFE_H_
