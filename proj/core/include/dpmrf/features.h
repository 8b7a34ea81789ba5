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

#ifndef DPMRF_FEATURES_H_
#define DPMRF_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpmrf/matrix.h"
#include "dpmrf/polynomial.h"

namespace dpmrf {

// Ordered list of monomials over [p] minus {node} used as regression
// features for one node. Encoding and coefficient read-back share the order.
class NodeFeatureMap {
 public:
  // [z_j for j != node in increasing j, then the constant 1].
  static NodeFeatureMap Ising(int num_vars, int node);
  // All I subset of [p] minus {node} with |I| <= order - 1, canonical order
  // (size, then lexicographic); the empty set comes first.
  static NodeFeatureMap Mrf(int num_vars, int node, int order);

  int node() const { return node_; }
  int num_vars() const { return num_vars_; }
  const std::vector<MonomialIndex>& monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }

  // out[f] = prod_{j in I_f} z_j.
  void Encode(std::span<const Spin> z, std::span<double> out) const;
  // Position of a monomial, or -1.
  int IndexOf(const MonomialIndex& monomial) const;

 private:
  NodeFeatureMap(int num_vars, int node, std::vector<MonomialIndex> monomials)
      : num_vars_(num_vars), node_(node), monomials_(std::move(monomials)) {}

  int num_vars_;
  int node_;
  std::vector<MonomialIndex> monomials_;
};

// sum_{j <= order-1} C(p-1, j).
std::size_t CountMrfFeatures(int num_vars, int order);

// Row r is the standard basis vector e_{s_r} (symbols 0..k-1).
Matrix OneHotEncode(std::span<const int8_t> symbols, int alphabet);

// Centers rows 0..p-2 to zero mean and adds the removed mass to the last
// row, so <U, x> = <w, x> for any one-hot x whose last row is e_0.
Matrix CenterRowsForOneHot(const Matrix& w);

}  // namespace dpmrf

#endif  // DPMRF_FEATURES_H_
