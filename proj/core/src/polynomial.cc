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

#include "dpmrf/polynomial.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>

#include "dpmrf/error.h"

namespace dpmrf {

MonomialIndex::MonomialIndex(std::vector<int> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    Require(indices_[i] >= 0, "monomial index must be non-negative");
    Require(i == 0 || indices_[i] != indices_[i - 1],
            "monomial indices must be distinct");
  }
}

bool MonomialIndex::Contains(int index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool MonomialIndex::IsSubsetOf(const MonomialIndex& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(),
                       indices_.begin(), indices_.end());
}

bool MonomialIndex::IsDisjointFrom(const MonomialIndex& other) const {
  auto a = indices_.begin();
  auto b = other.indices_.begin();
  while (a != indices_.end() && b != other.indices_.end()) {
    if (*a == *b) return false;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return true;
}

MonomialIndex MonomialIndex::Union(const MonomialIndex& other) const {
  MonomialIndex out;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(out.indices_));
  return out;
}

MonomialIndex MonomialIndex::Minus(const MonomialIndex& other) const {
  MonomialIndex out;
  std::set_difference(indices_.begin(), indices_.end(), other.indices_.begin(),
                      other.indices_.end(), std::back_inserter(out.indices_));
  return out;
}

int MonomialIndex::Parity(std::span<const Spin> x) const {
  int product = 1;
  for (int i : indices_) product *= x[i];
  return product;
}

std::string MonomialIndex::ToString() const {
  std::string out = "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(indices_[i]);
  }
  return out + "}";
}

std::strong_ordering operator<=>(const MonomialIndex& a,
                                 const MonomialIndex& b) {
  if (auto c = a.indices_.size() <=> b.indices_.size(); c != 0) return c;
  return a.indices_ <=> b.indices_;
}

std::vector<MonomialIndex> EnumerateMonomials(int p, int max_size,
                                              const MonomialIndex& excluded) {
  std::vector<int> pool;
  for (int i = 0; i < p; ++i) {
    if (!excluded.Contains(i)) pool.push_back(i);
  }
  std::vector<MonomialIndex> out;
  out.emplace_back();
  std::vector<int> chosen;
  // Lexicographic combinations of each size in turn.
  std::function<void(std::size_t, int)> recurse = [&](std::size_t start,
                                                      int remaining) {
    if (remaining == 0) {
      out.emplace_back(chosen);
      return;
    }
    for (std::size_t i = start; i + remaining <= pool.size(); ++i) {
      chosen.push_back(pool[i]);
      recurse(i + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  const int limit = std::min<int>(max_size, static_cast<int>(pool.size()));
  for (int size = 1; size <= limit; ++size) recurse(0, size);
  return out;
}

MultilinearPolynomial::MultilinearPolynomial(int num_vars)
    : num_vars_(num_vars) {
  Require(num_vars >= 0, "number of variables must be non-negative");
}

MultilinearPolynomial::MultilinearPolynomial(
    int num_vars,
    std::initializer_list<std::pair<MonomialIndex, double>> terms)
    : MultilinearPolynomial(num_vars) {
  for (const auto& [monomial, value] : terms) AddTerm(monomial, value);
}

void MultilinearPolynomial::CheckMonomial(const MonomialIndex& monomial) const {
  if (monomial.MaxIndex() >= num_vars_) {
    Fail(ErrorCode::kInvalidArgument,
         "monomial " + monomial.ToString() + " exceeds dimension " +
             std::to_string(num_vars_));
  }
}

double MultilinearPolynomial::Coefficient(const MonomialIndex& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? 0.0 : it->second;
}

void MultilinearPolynomial::AddTerm(const MonomialIndex& monomial, double value) {
  CheckMonomial(monomial);
  Require(std::isfinite(value), "coefficient must be finite");
  auto [it, inserted] = terms_.try_emplace(monomial, value);
  if (!inserted) it->second += value;
  if (std::abs(it->second) < kDropTolerance) terms_.erase(it);
}

void MultilinearPolynomial::SetTerm(const MonomialIndex& monomial, double value) {
  CheckMonomial(monomial);
  Require(std::isfinite(value), "coefficient must be finite");
  if (std::abs(value) < kDropTolerance) {
    terms_.erase(monomial);
  } else {
    terms_[monomial] = value;
  }
}

double MultilinearPolynomial::Evaluate(std::span<const Spin> x) const {
  Require(static_cast<int>(x.size()) == num_vars_,
          "point dimension " + std::to_string(x.size()) +
              " does not match polynomial dimension " +
              std::to_string(num_vars_));
  for (Spin v : x) Require(v == 1 || v == -1, "coordinates must be in {-1,+1}");
  return EvaluateUnchecked(x);
}

double MultilinearPolynomial::EvaluateUnchecked(std::span<const Spin> x) const {
  double sum = 0.0;
  for (const auto& [monomial, value] : terms_) sum += value * monomial.Parity(x);
  return sum;
}

MultilinearPolynomial MultilinearPolynomial::PartialDerivative(
    const MonomialIndex& monomial) const {
  CheckMonomial(monomial);
  MultilinearPolynomial out(num_vars_);
  for (const auto& [term, value] : terms_) {
    if (monomial.IsSubsetOf(term)) out.terms_.emplace(term.Minus(monomial), value);
  }
  return out;
}

double MultilinearPolynomial::L1Norm() const {
  double sum = 0.0;
  for (const auto& [term, value] : terms_) sum += std::abs(value);
  return sum;
}

std::vector<MonomialIndex> MultilinearPolynomial::MaximalMonomials() const {
  std::vector<MonomialIndex> out;
  for (const auto& [term, value] : terms_) {
    bool dominated = false;
    for (const auto& [other, other_value] : terms_) {
      if (other.size() > term.size() && term.IsSubsetOf(other)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(term);
  }
  return out;
}

int MultilinearPolynomial::Degree() const {
  int degree = 0;
  for (const auto& [term, value] : terms_) {
    degree = std::max(degree, static_cast<int>(term.size()));
  }
  return degree;
}

}  // namespace dpmrf
