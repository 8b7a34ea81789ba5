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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dpmrf/error.h"

namespace dpmrf {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  Require(data_.size() == rows * cols, "matrix data size mismatch");
}

Matrix Matrix::Transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

bool Matrix::IsZero() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

double Matrix::MaxAbs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void CheckSite(int site, int num_vars) {
  Require(site >= 0 && site < num_vars,
          "variable index " + std::to_string(site) + " out of range");
}

}  // namespace

IsingModel::IsingModel(int num_vars)
    : num_vars_(num_vars), couplings_(num_vars, num_vars), bias_(num_vars, 0.0) {
  Require(num_vars >= 0, "number of variables must be non-negative");
}

IsingModel::IsingModel(Matrix couplings, std::vector<double> bias)
    : num_vars_(static_cast<int>(bias.size())),
      couplings_(std::move(couplings)),
      bias_(std::move(bias)) {
  Require(couplings_.rows() == bias_.size() && couplings_.cols() == bias_.size(),
          "coupling matrix must be p x p with p = len(theta)");
  for (int i = 0; i < num_vars_; ++i) {
    Require(couplings_(i, i) == 0.0, "coupling diagonal must be zero");
    for (int j = i + 1; j < num_vars_; ++j) {
      Require(couplings_(i, j) == couplings_(j, i),
              "coupling matrix must be symmetric");
    }
  }
}

void IsingModel::SetCoupling(int i, int j, double value) {
  CheckSite(i, num_vars_);
  CheckSite(j, num_vars_);
  Require(i != j, "self-coupling is not allowed");
  couplings_(i, j) = value;
  couplings_(j, i) = value;
}

void IsingModel::SetBias(int i, double value) {
  CheckSite(i, num_vars_);
  bias_[i] = value;
}

PairwiseModel::PairwiseModel(int num_vars, int alphabet)
    : num_vars_(num_vars), alphabet_(alphabet), theta_(num_vars, alphabet) {
  Require(num_vars >= 0, "number of variables must be non-negative");
  Require(alphabet >= 2, "alphabet size must be at least 2");
}

double PairwiseModel::weight(int i, int j, int a, int b) const {
  if (i > j) return weight(j, i, b, a);
  auto it = weights_.find({i, j});
  return it == weights_.end() ? 0.0 : it->second(a, b);
}

Matrix PairwiseModel::WeightMatrix(int i, int j) const {
  CheckSite(i, num_vars_);
  CheckSite(j, num_vars_);
  Require(i != j, "weight matrices are defined for i != j");
  auto it = weights_.find({std::min(i, j), std::max(i, j)});
  if (it == weights_.end()) return Matrix(alphabet_, alphabet_);
  return i < j ? it->second : it->second.Transposed();
}

void PairwiseModel::SetWeight(int i, int j, const Matrix& w) {
  CheckSite(i, num_vars_);
  CheckSite(j, num_vars_);
  Require(i != j, "weight matrices are defined for i != j");
  Require(w.rows() == static_cast<std::size_t>(alphabet_) &&
              w.cols() == static_cast<std::size_t>(alphabet_),
          "weight matrix must be k x k");
  const Edge key{std::min(i, j), std::max(i, j)};
  Matrix stored = i < j ? w : w.Transposed();
  if (stored.IsZero()) {
    weights_.erase(key);
  } else {
    weights_[key] = std::move(stored);
  }
}

void PairwiseModel::SetTheta(int i, std::span<const double> values) {
  CheckSite(i, num_vars_);
  Require(values.size() == static_cast<std::size_t>(alphabet_),
          "theta vector must have k entries");
  std::copy(values.begin(), values.end(), theta_.row(i).begin());
}

BinaryMrf::BinaryMrf(int order, MultilinearPolynomial factorization)
    : order_(order), factorization_(std::move(factorization)) {
  Require(order >= 1, "MRF order must be at least 1");
  Require(factorization_.Degree() <= order,
          "factorization polynomial has a monomial larger than the order");
}

int NumVars(const Model& model) {
  return std::visit([](const auto& m) { return m.num_vars(); }, model);
}

int AlphabetSize(const Model& model) {
  if (const auto* pairwise = std::get_if<PairwiseModel>(&model)) {
    return pairwise->alphabet();
  }
  return 2;
}

double IsingWidth(const IsingModel& model) {
  double width = 0.0;
  for (int i = 0; i < model.num_vars(); ++i) {
    double row = std::abs(model.bias()[i]);
    for (int j = 0; j < model.num_vars(); ++j) row += std::abs(model.coupling(i, j));
    width = std::max(width, row);
  }
  return width;
}

double IsingMinEdge(const IsingModel& model) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < model.num_vars(); ++i) {
    for (int j = i + 1; j < model.num_vars(); ++j) {
      const double a = std::abs(model.coupling(i, j));
      if (a != 0.0) best = std::min(best, a);
    }
  }
  if (std::isinf(best)) Fail(ErrorCode::kNoEdges, "model has no edges");
  return best;
}

double PairwiseWidth(const PairwiseModel& model) {
  const int p = model.num_vars();
  const int k = model.alphabet();
  double width = 0.0;
  for (int i = 0; i < p; ++i) {
    for (int a = 0; a < k; ++a) {
      double total = std::abs(model.theta(i, a));
      for (int j = 0; j < p; ++j) {
        if (j == i) continue;
        double row_max = 0.0;
        for (int b = 0; b < k; ++b) {
          row_max = std::max(row_max, std::abs(model.weight(i, j, a, b)));
        }
        total += row_max;
      }
      width = std::max(width, total);
    }
  }
  return width;
}

double PairwiseMinEdge(const PairwiseModel& model) {
  if (model.weights().empty()) Fail(ErrorCode::kNoEdges, "model has no edges");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [edge, w] : model.weights()) best = std::min(best, w.MaxAbs());
  return best;
}

double MrfWidth(const BinaryMrf& model) {
  double width = 0.0;
  for (int i = 0; i < model.num_vars(); ++i) {
    width = std::max(width, model.factorization().PartialDerivative(i).L1Norm());
  }
  return width;
}

double Width(const Model& model) {
  struct Visitor {
    double operator()(const IsingModel& m) const { return IsingWidth(m); }
    double operator()(const PairwiseModel& m) const { return PairwiseWidth(m); }
    double operator()(const BinaryMrf& m) const { return MrfWidth(m); }
  };
  return std::visit(Visitor{}, model);
}

PairwiseModel CenterPairwise(const PairwiseModel& model) {
  const int k = model.alphabet();
  PairwiseModel out(model.num_vars(), k);
  Matrix theta = model.theta();
  for (const auto& [edge, w] : model.weights()) {
    const auto [i, j] = edge;
    std::vector<double> row_mean(k, 0.0), col_mean(k, 0.0);
    double grand = 0.0;
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        row_mean[a] += w(a, b) / k;
        col_mean[b] += w(a, b) / k;
        grand += w(a, b) / (static_cast<double>(k) * k);
      }
    }
    // W = W' + (r_a - m) + c_b: the first part goes to theta_i, the second to
    // theta_j.
    Matrix centered(k, k);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        centered(a, b) = w(a, b) - row_mean[a] - col_mean[b] + grand;
      }
    }
    for (int a = 0; a < k; ++a) theta(i, a) += row_mean[a] - grand;
    for (int b = 0; b < k; ++b) theta(j, b) += col_mean[b];
    // Entries that are zero up to rounding are snapped to keep already
    // centered inputs fixed.
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        if (std::abs(centered(a, b) - w(a, b)) < 1e-15) centered(a, b) = w(a, b);
      }
    }
    out.SetWeight(i, j, centered);
  }
  for (int i = 0; i < model.num_vars(); ++i) out.SetTheta(i, theta.row(i));
  return out;
}

BinaryMrf ToMrf(const IsingModel& model) {
  const int p = model.num_vars();
  MultilinearPolynomial h(p);
  for (int i = 0; i < p; ++i) {
    h.AddTerm(MonomialIndex{i}, model.bias()[i]);
    for (int j = i + 1; j < p; ++j) h.AddTerm(MonomialIndex{i, j}, model.coupling(i, j));
  }
  return BinaryMrf(2, std::move(h));
}

PairwiseModel IsingToPairwise(const IsingModel& model) {
  const int p = model.num_vars();
  PairwiseModel out(p, 2);
  for (int i = 0; i < p; ++i) {
    const double t = model.bias()[i];
    const double theta[2] = {-t, t};
    out.SetTheta(i, theta);
    for (int j = i + 1; j < p; ++j) {
      const double a = model.coupling(i, j);
      if (a == 0.0) continue;
      out.SetWeight(i, j, Matrix(2, 2, {a, -a, -a, a}));
    }
  }
  return out;
}

IsingModel MatchedPairsIsing(int num_vars, double eta) {
  Require(num_vars >= 0 && num_vars % 2 == 0,
          "matched-pairs fixture needs an even number of variables");
  std::vector<double> etas(num_vars / 2, eta);
  return MatchedPairsIsing(etas);
}

IsingModel MatchedPairsIsing(std::span<const double> etas) {
  IsingModel model(static_cast<int>(2 * etas.size()));
  for (std::size_t pair = 0; pair < etas.size(); ++pair) {
    const int a = static_cast<int>(2 * pair);
    model.SetCoupling(a, a + 1, etas[pair]);
  }
  return model;
}

double DeltaUnbiasedBound(const Model& model) {
  return std::exp(-2.0 * Width(model)) / AlphabetSize(model);
}

EdgeSet DependencyEdges(const Model& model) {
  EdgeSet edges;
  if (const auto* ising = std::get_if<IsingModel>(&model)) {
    for (int i = 0; i < ising->num_vars(); ++i) {
      for (int j = i + 1; j < ising->num_vars(); ++j) {
        if (ising->coupling(i, j) != 0.0) edges.insert({i, j});
      }
    }
  } else if (const auto* pairwise = std::get_if<PairwiseModel>(&model)) {
    for (const auto& [edge, w] : pairwise->weights()) {
      if (!w.IsZero()) edges.insert(edge);
    }
  } else {
    const auto& mrf = std::get<BinaryMrf>(model);
    for (const auto& [monomial, value] : mrf.factorization().terms()) {
      const auto& idx = monomial.indices();
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) edges.insert({idx[a], idx[b]});
      }
    }
  }
  return edges;
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double IsingConditionalPlus(const IsingModel& model, int site,
                            std::span<const Spin> state) {
  double field = model.bias()[site];
  const auto row = model.couplings().row(site);
  for (int j = 0; j < model.num_vars(); ++j) {
    if (j != site) field += row[j] * state[j];
  }
  return Sigmoid(2.0 * field);
}

double PairwisePairConditional(const PairwiseModel& model, int site, int u,
                               int v, std::span<const int8_t> state) {
  double logit = model.theta(site, u) - model.theta(site, v);
  for (int j = 0; j < model.num_vars(); ++j) {
    if (j == site) continue;
    logit += model.weight(site, j, u, state[j]) - model.weight(site, j, v, state[j]);
  }
  return Sigmoid(logit);
}

std::vector<double> PairwiseConditional(const PairwiseModel& model, int site,
                                        std::span<const int8_t> state) {
  const int k = model.alphabet();
  std::vector<double> logits(k);
  for (int a = 0; a < k; ++a) {
    double s = model.theta(site, a);
    for (int j = 0; j < model.num_vars(); ++j) {
      if (j != site) s += model.weight(site, j, a, state[j]);
    }
    logits[a] = s;
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& l : logits) {
    l = std::exp(l - top);
    total += l;
  }
  for (double& l : logits) l /= total;
  return logits;
}

MrfConditionals::MrfConditionals(const BinaryMrf& model) {
  derivatives_.reserve(model.num_vars());
  for (int i = 0; i < model.num_vars(); ++i) {
    derivatives_.push_back(model.factorization().PartialDerivative(i));
  }
}

double MrfConditionals::PlusProbability(int site,
                                        std::span<const Spin> state) const {
  return Sigmoid(2.0 * derivatives_[site].EvaluateUnchecked(state));
}

}  // namespace dpmrf
