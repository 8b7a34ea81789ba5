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

#include "dpmrf/frank_wolfe.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dpmrf/error.h"
#include "dpmrf/models.h"
#include "dpmrf/parallel.h"

namespace dpmrf {

void LogisticProblem::AddRow(std::span<const double> x, int label, double weight) {
  Require(static_cast<int>(x.size()) == dim_, "feature dimension mismatch");
  Require(label == 1 || label == -1, "labels must be -1 or +1");
  Require(weight >= 0.0, "row weight must be non-negative");
  for (double v : x) Require(std::abs(v) <= 1.0, "features must satisfy |x| <= 1");
  features_.insert(features_.end(), x.begin(), x.end());
  labels_.push_back(label);
  weights_.push_back(weight);
  total_weight_ += weight;
}

namespace {

// log(1 + e^{-z}) without overflow.
double Softplus(double z) {
  return z > 0 ? std::log1p(std::exp(-z)) : -z + std::log1p(std::exp(z));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Gradient given precomputed margins <w, x_r>.
void GradientFromMargins(const LogisticProblem& problem,
                         std::span<const double> margins,
                         std::vector<double>& grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  const int dim = problem.dim();
  for (std::size_t r = 0; r < problem.num_rows(); ++r) {
    const double y = problem.label(r);
    const double c = -problem.weight(r) * y * Sigmoid(-y * margins[r]);
    const auto x = problem.row(r);
    for (int j = 0; j < dim; ++j) grad[j] += c * x[j];
  }
  const double inv = 1.0 / problem.total_weight();
  for (double& g : grad) g *= inv;
}

}  // namespace

double LogisticLoss(const LogisticProblem& problem, std::span<const double> w) {
  Require(static_cast<int>(w.size()) == problem.dim(), "weight dimension mismatch");
  Require(problem.total_weight() > 0, "empty logistic problem");
  double total = 0.0;
  for (std::size_t r = 0; r < problem.num_rows(); ++r) {
    total += problem.weight(r) * Softplus(problem.label(r) * Dot(w, problem.row(r)));
  }
  return total / problem.total_weight();
}

std::vector<double> LogisticGradient(const LogisticProblem& problem,
                                     std::span<const double> w) {
  Require(static_cast<int>(w.size()) == problem.dim(), "weight dimension mismatch");
  Require(problem.total_weight() > 0, "empty logistic problem");
  std::vector<double> margins(problem.num_rows());
  for (std::size_t r = 0; r < problem.num_rows(); ++r) margins[r] = Dot(w, problem.row(r));
  std::vector<double> grad(problem.dim());
  GradientFromMargins(problem, margins, grad);
  return grad;
}

int DefaultIterations(double radius, double n, double rho) {
  Require(radius > 0 && n > 0 && rho > 0, "iteration rule needs positive inputs");
  const double t = std::pow(radius, 2.0 / 3.0) * std::pow(n * std::sqrt(rho), 2.0 / 3.0);
  return std::max(1, static_cast<int>(std::lround(t)));
}

int CurvatureIterations(double curvature, double lipschitz, double constraint_norm,
                        double n, double rho) {
  Require(curvature > 0 && lipschitz > 0 && constraint_norm > 0 && n > 0 && rho > 0,
          "iteration rule needs positive inputs");
  const double t = std::pow(curvature, 2.0 / 3.0) *
                   std::pow(n * std::sqrt(rho), 2.0 / 3.0) /
                   std::pow(lipschitz * constraint_norm, 2.0 / 3.0);
  return std::max(1, static_cast<int>(std::lround(t)));
}

FrankWolfeResult PrivateFrankWolfe(const LogisticProblem& problem,
                                   const L1Ball& constraint,
                                   const FrankWolfeConfig& config,
                                   Accountant* accountant,
                                   const std::string& label) {
  Require(constraint.dim == problem.dim(), "constraint dimension mismatch");
  Require(constraint.radius > 0, "constraint radius must be positive");
  Require(config.iterations >= 1, "Frank-Wolfe needs T >= 1");
  Require(config.lipschitz > 0, "Lipschitz constant must be positive");
  Require(problem.total_weight() > 0, "Frank-Wolfe on an empty dataset");
  if (!config.non_private) {
    Require(config.rho > 0, "private Frank-Wolfe needs rho > 0");
    if (!config.prepaid) {
      Require(accountant != nullptr, "private Frank-Wolfe needs an accountant");
      accountant->Spend(label, config.rho);
    }
  }

  const int dim = problem.dim();
  const double radius = constraint.radius;
  FrankWolfeResult result;
  result.iterations = config.iterations;
  result.noise_scale =
      config.non_private
          ? 0.0
          : FrankWolfeNoiseScale(config.lipschitz, constraint.norm_bound(),
                                 config.iterations, problem.total_weight(),
                                 config.rho);

  std::vector<double> w = config.initial.value_or(std::vector<double>(dim, 0.0));
  Require(static_cast<int>(w.size()) == dim, "initial point dimension mismatch");
  double norm = 0.0;
  for (double v : w) norm += std::abs(v);
  Require(norm <= radius + 1e-9, "initial point lies outside the constraint");

  std::vector<double> margins(problem.num_rows());
  for (std::size_t r = 0; r < problem.num_rows(); ++r) margins[r] = Dot(w, problem.row(r));
  std::vector<double> grad(dim);
  RngStream rng = config.rng;
  if (config.record_iterates) result.iterates.push_back(w);

  for (int t = 1; t < config.iterations; ++t) {
    CheckDeadline();
    GradientFromMargins(problem, margins, grad);
    int best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (int v = 0; v < constraint.num_vertices(); ++v) {
      const double sign = (v % 2 == 0) ? 1.0 : -1.0;
      const double score =
          sign * radius * grad[v / 2] + LaplaceNoise(result.noise_scale, rng);
      if (score < best_score) {
        best_score = score;
        best = v;
      }
    }
    const int coord = best / 2;
    const double vertex_value = (best % 2 == 0) ? radius : -radius;
    const double mu = 2.0 / (t + 2.0);
    for (double& v : w) v *= (1.0 - mu);
    w[coord] += mu * vertex_value;
    for (std::size_t r = 0; r < problem.num_rows(); ++r) {
      margins[r] = (1.0 - mu) * margins[r] + mu * vertex_value * problem.row(r)[coord];
    }
    if (config.record_iterates) result.iterates.push_back(w);
  }
  result.weights = std::move(w);
  return result;
}

FrankWolfeResult SparseLogisticFit(const LogisticProblem& problem, double radius,
                                   const SparseLogisticOptions& options,
                                   Accountant* accountant) {
  Require(radius > 0, "constraint radius must be positive");
  FrankWolfeConfig config;
  config.lipschitz = 2.0;
  config.curvature = radius * radius;
  config.rho = options.rho;
  config.non_private = options.non_private;
  config.prepaid = options.prepaid;
  config.rng = options.rng;
  const double n = std::max(problem.total_weight(), 1.0);
  config.iterations = options.iterations.value_or(
      DefaultIterations(radius, n, options.non_private ? 1.0 : options.rho));
  return PrivateFrankWolfe(problem, L1Ball{problem.dim(), radius}, config,
                           accountant, options.label);
}

}  // namespace dpmrf
