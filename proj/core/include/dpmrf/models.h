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

#ifndef DPMRF_MODELS_H_
#define DPMRF_MODELS_H_

#include <map>
#include <set>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "dpmrf/matrix.h"
#include "dpmrf/polynomial.h"

namespace dpmrf {

using Edge = std::pair<int, int>;  // always first < second
using EdgeSet = std::set<Edge>;

// Pr(z) proportional to exp(sum_{i<j} A_ij z_i z_j + sum_i theta_i z_i) on
// {-1,+1}^p. A is symmetric with a zero diagonal.
class IsingModel {
 public:
  explicit IsingModel(int num_vars = 0);
  // Validates symmetry (exact) and the zero diagonal.
  IsingModel(Matrix couplings, std::vector<double> bias);

  int num_vars() const { return num_vars_; }
  const Matrix& couplings() const { return couplings_; }
  const std::vector<double>& bias() const { return bias_; }
  double coupling(int i, int j) const { return couplings_(i, j); }

  // Sets A_ij and A_ji.
  void SetCoupling(int i, int j, double value);
  void SetBias(int i, double value);

 private:
  int num_vars_;
  Matrix couplings_;
  std::vector<double> bias_;
};

// Pr(z) proportional to exp(sum_{i<j} W_ij(z_i, z_j) + sum_i theta_i(z_i)) on
// {0..k-1}^p. Only pairs with a stored matrix interact; W_ji = W_ij^T.
class PairwiseModel {
 public:
  PairwiseModel(int num_vars = 0, int alphabet = 2);

  int num_vars() const { return num_vars_; }
  int alphabet() const { return alphabet_; }

  // W_ij(a, b) for any i != j.
  double weight(int i, int j, int a, int b) const;
  // Full k x k matrix oriented as (symbol of i, symbol of j); zero if absent.
  Matrix WeightMatrix(int i, int j) const;
  void SetWeight(int i, int j, const Matrix& w);
  // Stored matrices keyed by (i, j) with i < j.
  const std::map<Edge, Matrix>& weights() const { return weights_; }

  const Matrix& theta() const { return theta_; }  // p x k
  double theta(int i, int a) const { return theta_(i, a); }
  void SetTheta(int i, std::span<const double> values);

 private:
  int num_vars_;
  int alphabet_;
  std::map<Edge, Matrix> weights_;
  Matrix theta_;
};

// Binary t-wise MRF: Pr(z) proportional to exp(h(z)) with deg(h) <= t.
class BinaryMrf {
 public:
  BinaryMrf() = default;
  BinaryMrf(int order, MultilinearPolynomial factorization);

  int num_vars() const { return factorization_.num_vars(); }
  int order() const { return order_; }
  const MultilinearPolynomial& factorization() const { return factorization_; }

 private:
  int order_ = 0;
  MultilinearPolynomial factorization_;
};

using Model = std::variant<IsingModel, PairwiseModel, BinaryMrf>;

int NumVars(const Model& model);
// 2 for Ising and binary MRFs.
int AlphabetSize(const Model& model);

double IsingWidth(const IsingModel& model);
// Throws kNoEdges when A has no non-zero entry.
double IsingMinEdge(const IsingModel& model);
double PairwiseWidth(const PairwiseModel& model);
// min over present edges of max_{a,b} |W_ij(a,b)|; kNoEdges if none.
double PairwiseMinEdge(const PairwiseModel& model);
double MrfWidth(const BinaryMrf& model);
double Width(const Model& model);

// Moves row and column means of every W_ij into Theta so that each W_ij has
// zero row and column sums. The distribution is unchanged.
PairwiseModel CenterPairwise(const PairwiseModel& model);

BinaryMrf ToMrf(const IsingModel& model);
// Spin -1 maps to symbol 0 and +1 to symbol 1.
PairwiseModel IsingToPairwise(const IsingModel& model);

// A_{2i,2i+1} = eta for every pair (0-based), theta = 0. p must be even.
IsingModel MatchedPairsIsing(int num_vars, double eta);
// One eta per pair; the model has 2 * etas.size() variables.
IsingModel MatchedPairsIsing(std::span<const double> etas);

// e^{-2 lambda}/k for pairwise and Ising models, e^{-2 lambda}/2 for MRFs.
double DeltaUnbiasedBound(const Model& model);

// Dependency-graph edges. For MRFs, pairs that co-occur in a monomial with a
// non-zero coefficient.
EdgeSet DependencyEdges(const Model& model);

double Sigmoid(double z);

// Closed-form single-site conditionals. `state` is a full configuration; the
// entry at `site` is ignored.
// Pr(Z_i = +1 | Z_-i) = sigmoid(sum_j 2 A_ij x_j + 2 theta_i).
double IsingConditionalPlus(const IsingModel& model, int site,
                            std::span<const Spin> state);
// Pr(Z_i = u | Z_i in {u, v}, Z_-i) =
//   sigmoid(sum_j W_ij(u, x_j) - W_ij(v, x_j) + theta_i(u) - theta_i(v)).
double PairwisePairConditional(const PairwiseModel& model, int site, int u,
                               int v, std::span<const int8_t> state);
// Full conditional distribution of Z_i over the k symbols.
std::vector<double> PairwiseConditional(const PairwiseModel& model, int site,
                                        std::span<const int8_t> state);

// Caches d_i h for every node so Pr(Z_i = +1 | Z_-i) = sigmoid(2 d_i h(x))
// can be evaluated repeatedly.
class MrfConditionals {
 public:
  explicit MrfConditionals(const BinaryMrf& model);
  double PlusProbability(int site, std::span<const Spin> state) const;
  const MultilinearPolynomial& derivative(int site) const {
    return derivatives_[site];
  }

 private:
  std::vector<MultilinearPolynomial> derivatives_;
};

}  // namespace dpmrf

#endif  // DPMRF_MODELS_H_
