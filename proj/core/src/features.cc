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

#include <algorithm>

#include "dpmrf/error.h"

namespace dpmrf {

NodeFeatureMap NodeFeatureMap::Ising(int num_vars, int node) {
  Require(node >= 0 && node < num_vars, "node out of range");
  std::vector<MonomialIndex> monomials;
  for (int j = 0; j < num_vars; ++j) {
    if (j != node) monomials.push_back(MonomialIndex{j});
  }
  monomials.emplace_back();
  return NodeFeatureMap(num_vars, node, std::move(monomials));
}

NodeFeatureMap NodeFeatureMap::Mrf(int num_vars, int node, int order) {
  Require(node >= 0 && node < num_vars, "node out of range");
  Require(order >= 1, "order must be at least 1");
  return NodeFeatureMap(num_vars, node,
                        EnumerateMonomials(num_vars, order - 1, MonomialIndex{node}));
}

void NodeFeatureMap::Encode(std::span<const Spin> z, std::span<double> out) const {
  for (std::size_t f = 0; f < monomials_.size(); ++f) out[f] = monomials_[f].Parity(z);
}

int NodeFeatureMap::IndexOf(const MonomialIndex& monomial) const {
  auto it = std::find(monomials_.begin(), monomials_.end(), monomial);
  return it == monomials_.end() ? -1 : static_cast<int>(it - monomials_.begin());
}

std::size_t CountMrfFeatures(int num_vars, int order) {
  std::size_t total = 0;
  std::size_t binom = 1;  // C(p-1, j)
  const std::size_t m = num_vars > 0 ? num_vars - 1 : 0;
  for (int j = 0; j <= order - 1 && static_cast<std::size_t>(j) <= m; ++j) {
    total += binom;
    binom = binom * (m - j) / (j + 1);
  }
  return total;
}

Matrix OneHotEncode(std::span<const int8_t> symbols, int alphabet) {
  Matrix out(symbols.size(), alphabet);
  for (std::size_t r = 0; r < symbols.size(); ++r) {
    Require(symbols[r] >= 0 && symbols[r] < alphabet, "symbol outside the alphabet");
    out(r, symbols[r]) = 1.0;
  }
  return out;
}

Matrix CenterRowsForOneHot(const Matrix& w) {
  Require(w.rows() >= 1, "matrix needs at least one row");
  const std::size_t last = w.rows() - 1;
  const double k = static_cast<double>(w.cols());
  Matrix u = w;
  double moved = 0.0;
  for (std::size_t j = 0; j < last; ++j) {
    double row_sum = 0.0;
    for (std::size_t b = 0; b < w.cols(); ++b) row_sum += w(j, b);
    for (std::size_t b = 0; b < w.cols(); ++b) u(j, b) = w(j, b) - row_sum / k;
    moved += row_sum;
  }
  for (std::size_t b = 0; b < w.cols(); ++b) u(last, b) = w(last, b) + moved / k;
  return u;
}

}  // namespace dpmrf
