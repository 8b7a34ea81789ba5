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

#include "dpmrf/learners.h"

#include <algorithm>
#include <string>
#include <utility>

#include "dpmrf/error.h"
#include "dpmrf/features.h"
#include "dpmrf/frank_wolfe.h"
#include "dpmrf/parallel.h"

namespace dpmrf {
namespace {

void ValidateOptions(const LearnerOptions& options, const Accountant* accountant) {
  Require(options.lambda > 0, "lambda must be positive");
  Require(!options.iterations || *options.iterations >= 1, "iterations must be >= 1");
  if (!options.non_private) {
    Require(options.rho > 0, "rho must be positive");
    Require(accountant != nullptr, "private learning needs an accountant");
  }
}

// All charges are checked against the remaining budget before any data is
// read, then recorded serially in a fixed order.
void ReserveBudget(Accountant* accountant, const std::vector<std::string>& labels,
                   double each, bool non_private) {
  if (non_private) return;
  const double total = each * static_cast<double>(labels.size());
  if (!accountant->CanSpend(total)) {
    Fail(ErrorCode::kBudgetExceeded,
         "learner needs rho " + std::to_string(total) + " but only " +
             std::to_string(accountant->remaining()) + " remains");
  }
  for (const std::string& label : labels) accountant->Spend(label, each);
}

SparseLogisticOptions FitOptions(const LearnerOptions& options, double rho,
                                 RngStream rng, std::string label) {
  SparseLogisticOptions fit;
  fit.rho = rho;
  fit.non_private = options.non_private;
  fit.prepaid = true;
  fit.iterations = options.iterations;
  fit.rng = rng;
  fit.label = std::move(label);
  return fit;
}

double Clamp(double value, const LearnerOptions& options) {
  return options.clamp ? std::clamp(value, -options.lambda, options.lambda) : value;
}

LogisticProblem MonomialProblem(const CompressedRows& rows, const NodeFeatureMap& map) {
  LogisticProblem problem(static_cast<int>(map.size()));
  std::vector<double> x(map.size());
  for (std::size_t r = 0; r < rows.num_unique(); ++r) {
    const auto z = rows.row(r);
    map.Encode(z, x);
    problem.AddRow(x, z[map.node()], rows.counts[r]);
  }
  return problem;
}

void RequireBinary(const Dataset& data) {
  Require(data.binary(), "learner needs binary (+-1) data");
  Require(!data.empty(), "learner needs at least one sample");
}

void CheckFeatureCount(int num_vars, int order, std::size_t cap) {
  Require(order >= 1, "order t must be at least 1");
  const std::size_t count = CountMrfFeatures(num_vars, order);
  if (count > cap) {
    Fail(ErrorCode::kTooManyFeatures,
         std::to_string(count) + " features per node exceed the cap of " +
             std::to_string(cap));
  }
}

// Fits every node of a t-wise model over the given rows and returns v_i.
std::vector<MultilinearPolynomial> FitMrfNodes(const Dataset& data, int order,
                                               const LearnerOptions& options,
                                               double rho_each,
                                               const std::string& tag) {
  const int p = data.num_vars();
  const CompressedRows rows = Compress(data);
  const RngStream root = RngStream(options.seed).Child(tag);
  std::vector<MultilinearPolynomial> polys(p, MultilinearPolynomial(p));
  ParallelFor(p, options.threads, [&](std::size_t node) {
    const NodeFeatureMap map = NodeFeatureMap::Mrf(p, static_cast<int>(node), order);
    const LogisticProblem problem = MonomialProblem(rows, map);
    const FrankWolfeResult fit = SparseLogisticFit(
        problem, 2.0 * options.lambda,
        FitOptions(options, rho_each, root.Child(node), tag), nullptr);
    MultilinearPolynomial v(p);
    for (std::size_t f = 0; f < map.size(); ++f) {
      v.SetTerm(map.monomials()[f], 0.5 * fit.weights[f]);
    }
    polys[node] = std::move(v);
  });
  return polys;
}

std::vector<std::string> NodeLabels(const std::string& tag, int p) {
  std::vector<std::string> labels;
  for (int i = 0; i < p; ++i) labels.push_back(tag + "-node-" + std::to_string(i));
  return labels;
}

}  // namespace

IsingModel IsingEstimate::ToModel() const { return IsingModel(A_hat, theta_hat); }

IsingEstimate LearnIsing(const Dataset& data, const LearnerOptions& options,
                         Accountant* accountant) {
  RequireBinary(data);
  ValidateOptions(options, accountant);
  const int p = data.num_vars();
  const double rho_each = options.rho / p;
  ReserveBudget(accountant, NodeLabels("ising", p), rho_each, options.non_private);

  const CompressedRows rows = Compress(data);
  const RngStream root = RngStream(options.seed).Child("ising");
  IsingEstimate est;
  est.raw = Matrix(p, p);
  est.theta_hat.assign(p, 0.0);
  est.node_weights.resize(p);
  ParallelFor(p, options.threads, [&](std::size_t node) {
    const NodeFeatureMap map = NodeFeatureMap::Ising(p, static_cast<int>(node));
    const LogisticProblem problem = MonomialProblem(rows, map);
    FrankWolfeResult fit = SparseLogisticFit(
        problem, 2.0 * options.lambda,
        FitOptions(options, rho_each, root.Child(node), "ising"), nullptr);
    for (int j = 0; j < p; ++j) {
      if (j == static_cast<int>(node)) continue;
      const int shifted = j < static_cast<int>(node) ? j : j - 1;
      est.raw(node, j) = 0.5 * fit.weights[shifted];
    }
    est.theta_hat[node] = 0.5 * fit.weights[p - 1];
    est.node_weights[node] = std::move(fit.weights);
  });

  est.A_hat = Matrix(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const double value = Clamp(0.5 * (est.raw(i, j) + est.raw(j, i)), options);
      est.A_hat(i, j) = value;
      est.A_hat(j, i) = value;
    }
  }
  return est;
}

PairwiseModel PairwiseEstimate::ToModel() const {
  PairwiseModel model(num_vars, alphabet);
  for (const auto& [edge, w] : W_hat) {
    if (edge.first < edge.second) model.SetWeight(edge.first, edge.second, w);
  }
  return model;
}

PairwiseEstimate LearnPairwise(const Dataset& data, const LearnerOptions& options,
                               Accountant* accountant) {
  Require(!data.binary(), "pairwise learner needs categorical data");
  Require(!data.empty(), "learner needs at least one sample");
  ValidateOptions(options, accountant);
  const int p = data.num_vars();
  const int k = data.alphabet();
  const double rho_each = options.rho / (static_cast<double>(k) * k * p);

  struct Fit {
    int node, u, v;
  };
  std::vector<Fit> fits;
  std::vector<std::string> labels;
  for (int i = 0; i < p; ++i) {
    for (int u = 0; u < k; ++u) {
      for (int v = u + 1; v < k; ++v) {
        fits.push_back({i, u, v});
        labels.push_back("pairwise-node-" + std::to_string(i) + "-pair-" +
                         std::to_string(u) + "-" + std::to_string(v));
      }
    }
  }
  ReserveBudget(accountant, labels, rho_each, options.non_private);

  const CompressedRows rows = Compress(data);
  const RngStream root = RngStream(options.seed).Child("pairwise");
  const int dim = p * k;
  // Centered p x k coefficient blocks U_{u,v} for u < v.
  std::vector<Matrix> centered(fits.size());
  std::vector<char> empty(fits.size(), 0);
  ParallelFor(fits.size(), options.threads, [&](std::size_t f) {
    const auto [node, u, v] = fits[f];
    LogisticProblem problem(dim);
    std::vector<double> x(dim);
    for (std::size_t r = 0; r < rows.num_unique(); ++r) {
      const auto z = rows.row(r);
      if (z[node] != u && z[node] != v) continue;
      std::fill(x.begin(), x.end(), 0.0);
      int slot = 0;
      for (int j = 0; j < p; ++j) {
        if (j == node) continue;
        x[slot * k + z[j]] = 1.0;
        ++slot;
      }
      x[(p - 1) * k] = 1.0;  // the constant, encoded as symbol 0
      problem.AddRow(x, z[node] == u ? 1 : -1, rows.counts[r]);
    }
    if (problem.num_rows() == 0) {
      centered[f] = Matrix(p, k);
      empty[f] = 1;
      return;
    }
    const FrankWolfeResult fit = SparseLogisticFit(
        problem, 2.0 * options.lambda * k,
        FitOptions(options, rho_each, root.Child(node).Child(u * k + v), labels[f]),
        nullptr);
    centered[f] = CenterRowsForOneHot(Matrix(p, k, fit.weights));
  });

  PairwiseEstimate est;
  est.num_vars = p;
  est.alphabet = k;
  for (std::size_t f = 0; f < fits.size(); ++f) {
    if (empty[f]) {
      est.warnings.push_back("node " + std::to_string(fits[f].node) + ": no samples with symbol " +
                             std::to_string(fits[f].u + 1) + " or " +
                             std::to_string(fits[f].v + 1) + "; block set to zero");
    }
  }

  std::size_t f = 0;
  for (int i = 0; i < p; ++i) {
    // sum_v U_{u,v} for each u; U_{v,u} = -U_{u,v}.
    std::vector<Matrix> sums(k, Matrix(p, k));
    for (int u = 0; u < k; ++u) {
      for (int v = u + 1; v < k; ++v, ++f) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(p); ++j) {
          for (int b = 0; b < k; ++b) {
            sums[u](j, b) += centered[f](j, b);
            sums[v](j, b) -= centered[f](j, b);
          }
        }
      }
    }
    int slot = 0;
    for (int j = 0; j < p; ++j) {
      if (j == i) continue;
      Matrix block(k, k);
      for (int u = 0; u < k; ++u) {
        for (int b = 0; b < k; ++b) block(u, b) = sums[u](slot, b) / k;
      }
      est.per_node[{i, j}] = std::move(block);
      ++slot;
    }
  }

  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const Matrix& from_i = est.per_node.at({i, j});
      const Matrix& from_j = est.per_node.at({j, i});
      Matrix avg(k, k);
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
          avg(a, b) = Clamp(0.5 * (from_i(a, b) + from_j(b, a)), options);
        }
      }
      est.W_hat[{j, i}] = avg.Transposed();
      est.W_hat[{i, j}] = std::move(avg);
    }
  }
  return est;
}

MrfEstimate LearnMrfL1(const Dataset& data, int order, const LearnerOptions& options,
                       Accountant* accountant) {
  RequireBinary(data);
  ValidateOptions(options, accountant);
  const int p = data.num_vars();
  CheckFeatureCount(p, order, options.feature_cap);
  const double rho_each = options.rho / p;
  ReserveBudget(accountant, NodeLabels("mrf-l1", p), rho_each, options.non_private);

  MrfEstimate est;
  est.order = order;
  est.node_polynomials = FitMrfNodes(data, order, options, rho_each, "mrf-l1");
  est.u = MultilinearPolynomial(p);
  for (int i = 0; i < p; ++i) {
    for (const auto& [monomial, coef] : est.node_polynomials[i].terms()) {
      if (!monomial.empty() && monomial.MinIndex() < i) continue;
      est.u.SetTerm(monomial.Union(MonomialIndex{i}), coef);
    }
  }
  return est;
}

MrfEstimate LearnMrfLinf(const Dataset& data, int order, const LearnerOptions& options,
                         const LinfOptions& linf, Accountant* accountant) {
  RequireBinary(data);
  ValidateOptions(options, accountant);
  Require(linf.split > 0 && linf.split < 1, "split fraction must lie in (0, 1)");
  Require(static_cast<bool>(linf.release), "missing parity release strategy");
  const int p = data.num_vars();
  CheckFeatureCount(p, order, options.feature_cap);
  const std::size_t n = data.num_rows();
  const auto n1 = static_cast<std::size_t>(linf.split * static_cast<double>(n));
  if (n1 < 1 || n1 >= n) {
    Fail(ErrorCode::kInsufficientData, "sample split leaves an empty half");
  }
  if (!options.non_private && !accountant->CanSpend(options.rho)) {
    Fail(ErrorCode::kBudgetExceeded, "learner budget exceeds the remaining rho");
  }

  MrfEstimate est;
  est.order = order;
  const Dataset fit_rows = data.Slice(0, n1);
  const Dataset parity_rows = data.Slice(n1, n);
  est.parities = linf.release(parity_rows, order, options.rho / 2.0, options.non_private,
                              accountant, RngStream(options.seed).Child("parities"));
  const double rho_each = options.rho / (2.0 * p);
  ReserveBudget(accountant, NodeLabels("mrf-linf", p), rho_each, options.non_private);
  est.node_polynomials = FitMrfNodes(fit_rows, order, options, rho_each, "mrf-linf");

  est.u = MultilinearPolynomial(p);
  for (int i = 0; i < p; ++i) {
    const NodeFeatureMap map = NodeFeatureMap::Mrf(p, i, order);
    for (const MonomialIndex& monomial : map.monomials()) {
      if (!monomial.empty() && monomial.MinIndex() < i) continue;
      double value = 0.0;
      const MultilinearPolynomial derivative =
          est.node_polynomials[i].PartialDerivative(monomial);
      for (const auto& [term, coef] : derivative.terms()) {
        value += coef * est.parities->Get(term);
      }
      est.u.SetTerm(monomial.Union(MonomialIndex{i}), value);
    }
  }
  return est;
}

}  // namespace dpmrf
