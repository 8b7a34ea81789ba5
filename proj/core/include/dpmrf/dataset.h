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

#ifndef DPMRF_DATASET_H_
#define DPMRF_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace dpmrf {

struct DatasetProvenance {
  std::string generator;  // "exact", "gibbs", "csv", ...
  uint64_t seed = 0;
};

// n samples over {-1,+1}^p (binary) or {0..k-1}^p (categorical), row-major.
class Dataset {
 public:
  using Provenance = DatasetProvenance;

  Dataset() = default;
  // Validates every entry against the alphabet.
  Dataset(int num_vars, int alphabet, bool binary, std::vector<int8_t> values,
          Provenance provenance = {});

  int num_vars() const { return num_vars_; }
  int alphabet() const { return alphabet_; }
  bool binary() const { return binary_; }
  std::size_t num_rows() const {
    return num_vars_ == 0 ? 0 : values_.size() / num_vars_;
  }
  bool empty() const { return num_rows() == 0; }
  std::span<const int8_t> row(std::size_t r) const {
    return {values_.data() + r * num_vars_, static_cast<std::size_t>(num_vars_)};
  }
  const std::vector<int8_t>& values() const { return values_; }
  const Provenance& provenance() const { return provenance_; }

  // Rows [begin, end).
  Dataset Slice(std::size_t begin, std::size_t end) const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.num_vars_ == b.num_vars_ && a.alphabet_ == b.alphabet_ &&
           a.binary_ == b.binary_ && a.values_ == b.values_;
  }

 private:
  int num_vars_ = 0;
  int alphabet_ = 2;
  bool binary_ = true;
  std::vector<int8_t> values_;
  Provenance provenance_;
};

// Distinct rows with multiplicities, sorted lexicographically. Logistic losses
// depend on the data only through these counts, so the learners fit on the
// compressed form.
struct CompressedRows {
  int num_vars = 0;
  std::vector<int8_t> rows;       // unique rows, row-major
  std::vector<double> counts;     // multiplicity of each unique row
  std::size_t num_unique() const { return counts.size(); }
  std::span<const int8_t> row(std::size_t r) const {
    return {rows.data() + r * num_vars, static_cast<std::size_t>(num_vars)};
  }
};

CompressedRows Compress(const Dataset& data);

// CSV without header; binary entries are -1/1, categorical entries 1..k.
void WriteDatasetCsv(std::ostream& out, const Dataset& data);

enum class DataKind { kBinary, kCategorical };
// For categorical data, alphabet == 0 infers k from the largest symbol.
Dataset ReadDatasetCsv(std::istream& in, DataKind kind, int alphabet = 0);

}  // namespace dpmrf

#endif  // DPMRF_DATASET_H_
