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

#ifndef DPMRF_POLYNOMIAL_H_
#define DPMRF_POLYNOMIAL_H_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dpmrf {

// A spin value in {-1, +1}.
using Spin = int8_t;

// Set of variable indices (0-based), stored strictly increasing. The empty
// set is the constant monomial. Ordering is canonical: by size, then
// lexicographic, which is also the feature order used by the learners.
class MonomialIndex {
 public:
  MonomialIndex() = default;
  // Sorts and validates; duplicates or negative indices are rejected.
  explicit MonomialIndex(std::vector<int> indices);
  MonomialIndex(std::initializer_list<int> indices)
      : MonomialIndex(std::vector<int>(indices)) {}

  const std::vector<int>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool Contains(int index) const;
  bool IsSubsetOf(const MonomialIndex& other) const;
  bool IsDisjointFrom(const MonomialIndex& other) const;
  int MaxIndex() const { return indices_.empty() ? -1 : indices_.back(); }
  int MinIndex() const { return indices_.empty() ? -1 : indices_.front(); }

  MonomialIndex Union(const MonomialIndex& other) const;
  MonomialIndex Minus(const MonomialIndex& other) const;

  // Product of x_i over the set; the empty product is 1.
  int Parity(std::span<const Spin> x) const;

  std::string ToString() const;  // "{0,2,5}"

  friend bool operator==(const MonomialIndex&, const MonomialIndex&) = default;
  friend std::strong_ordering operator<=>(const MonomialIndex& a,
                                          const MonomialIndex& b);

 private:
  std::vector<int> indices_;
};

// All index sets I subset of {0..p-1} minus `excluded`, with |I| <= max_size,
// in canonical order.
std::vector<MonomialIndex> EnumerateMonomials(int p, int max_size,
                                              const MonomialIndex& excluded = {});

// Sparse multilinear polynomial h(x) = sum_I hbar(I) prod_{i in I} x_i over
// x in {-1,+1}^p. Coefficients with magnitude below kDropTolerance are never
// stored.
class MultilinearPolynomial {
 public:
  static constexpr double kDropTolerance = 1e-15;
  using TermMap = std::map<MonomialIndex, double>;

  MultilinearPolynomial() = default;
  explicit MultilinearPolynomial(int num_vars);
  MultilinearPolynomial(int num_vars,
                        std::initializer_list<std::pair<MonomialIndex, double>> terms);

  int num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // hbar(I); zero when the monomial is absent.
  double Coefficient(const MonomialIndex& monomial) const;

  // hbar(I) += value, dropping the term if the result is negligible.
  void AddTerm(const MonomialIndex& monomial, double value);
  // hbar(I) = value.
  void SetTerm(const MonomialIndex& monomial, double value);

  // Sums terms in canonical key order. Throws kInvalidArgument on a length
  // mismatch or a coordinate outside {-1, +1}.
  double Evaluate(std::span<const Spin> x) const;
  // Same sum without validation; x must have num_vars() entries in {-1,+1}.
  double EvaluateUnchecked(std::span<const Spin> x) const;

  // d_I h: term J (disjoint from I) carries hbar(J u I).
  MultilinearPolynomial PartialDerivative(const MonomialIndex& monomial) const;
  MultilinearPolynomial PartialDerivative(int index) const {
    return PartialDerivative(MonomialIndex{index});
  }

  double L1Norm() const;

  // Stored index sets not strictly contained in another stored index set.
  std::vector<MonomialIndex> MaximalMonomials() const;

  int Degree() const;

  friend bool operator==(const MultilinearPolynomial&,
                         const MultilinearPolynomial&) = default;

 private:
  void CheckMonomial(const MonomialIndex& monomial) const;

  int num_vars_ = 0;
  TermMap terms_;
};

}  // namespace dpmrf

#endif  // DPMRF_POLYNOMIAL_H_
