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

#include "dpmrf/dataset.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

#include "dpmrf/error.h"

namespace dpmrf {

Dataset::Dataset(int num_vars, int alphabet, bool binary,
                 std::vector<int8_t> values, Provenance provenance)
    : num_vars_(num_vars),
      alphabet_(alphabet),
      binary_(binary),
      values_(std::move(values)),
      provenance_(std::move(provenance)) {
  Require(num_vars >= 1, "dataset needs at least one variable");
  Require(alphabet >= 2, "alphabet size must be at least 2");
  Require(!binary || alphabet == 2, "binary datasets have alphabet size 2");
  Require(values_.size() % num_vars == 0, "ragged dataset");
  for (int8_t v : values_) {
    if (binary) {
      Require(v == 1 || v == -1, "binary entries must be -1 or +1");
    } else {
      Require(v >= 0 && v < alphabet, "symbol outside the alphabet");
    }
  }
}

Dataset Dataset::Slice(std::size_t begin, std::size_t end) const {
  Require(begin <= end && end <= num_rows(), "slice out of range");
  std::vector<int8_t> values(values_.begin() + begin * num_vars_,
                             values_.begin() + end * num_vars_);
  Dataset out;
  out.num_vars_ = num_vars_;
  out.alphabet_ = alphabet_;
  out.binary_ = binary_;
  out.values_ = std::move(values);
  out.provenance_ = provenance_;
  return out;
}

CompressedRows Compress(const Dataset& data) {
  CompressedRows out;
  out.num_vars = data.num_vars();
  const int p = data.num_vars();
  int bits = 1;
  while ((1 << bits) < data.alphabet()) ++bits;
  if (p * bits <= 64) {
    // Pack each row into an integer whose numeric order is the lexicographic
    // row order (coordinate 0 most significant), then sort and count runs.
    std::vector<uint64_t> keys(data.num_rows());
    for (std::size_t r = 0; r < data.num_rows(); ++r) {
      uint64_t key = 0;
      for (int8_t v : data.row(r)) {
        const uint64_t digit = data.binary() ? (v + 1) / 2 : v;
        key = (key << bits) | digit;
      }
      keys[r] = key;
    }
    std::sort(keys.begin(), keys.end());
    const uint64_t mask = (bits == 64) ? ~0ull : ((1ull << bits) - 1);
    for (std::size_t r = 0; r < keys.size();) {
      std::size_t end = r;
      while (end < keys.size() && keys[end] == keys[r]) ++end;
      for (int i = 0; i < p; ++i) {
        const uint64_t digit = (keys[r] >> (bits * (p - 1 - i))) & mask;
        out.rows.push_back(static_cast<int8_t>(
            data.binary() ? 2 * static_cast<int>(digit) - 1 : static_cast<int>(digit)));
      }
      out.counts.push_back(static_cast<double>(end - r));
      r = end;
    }
    return out;
  }
  std::map<std::vector<int8_t>, double> counts;
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    const auto row = data.row(r);
    counts[std::vector<int8_t>(row.begin(), row.end())] += 1.0;
  }
  out.rows.reserve(counts.size() * p);
  out.counts.reserve(counts.size());
  for (const auto& [row, count] : counts) {
    out.rows.insert(out.rows.end(), row.begin(), row.end());
    out.counts.push_back(count);
  }
  return out;
}

void WriteDatasetCsv(std::ostream& out, const Dataset& data) {
  std::string line;
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    line.clear();
    const auto row = data.row(r);
    for (int i = 0; i < data.num_vars(); ++i) {
      if (i) line += ',';
      line += std::to_string(data.binary() ? row[i] : row[i] + 1);
    }
    line += '\n';
    out << line;
  }
}

Dataset ReadDatasetCsv(std::istream& in, DataKind kind, int alphabet) {
  std::vector<int8_t> values;
  int num_vars = -1;
  int max_symbol = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream fields(line);
    std::string field;
    int count = 0;
    while (std::getline(fields, field, ',')) {
      int value = 0;
      try {
        std::size_t used = 0;
        value = std::stoi(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        Fail(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                    ": not an integer: '" + field + "'");
      }
      if (kind == DataKind::kBinary) {
        if (value != 1 && value != -1) {
          Fail(ErrorCode::kInvalidArgument,
               "line " + std::to_string(line_no) + ": binary entries must be -1 or 1");
        }
        values.push_back(static_cast<int8_t>(value));
      } else {
        if (value < 1 || value > 127 || (alphabet > 0 && value > alphabet)) {
          Fail(ErrorCode::kInvalidArgument,
               "line " + std::to_string(line_no) + ": symbol out of range");
        }
        max_symbol = std::max(max_symbol, value);
        values.push_back(static_cast<int8_t>(value - 1));
      }
      ++count;
    }
    if (num_vars < 0) num_vars = count;
    if (count != num_vars) {
      Fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(num_vars) + " fields");
    }
  }
  Require(num_vars > 0, "empty dataset file");
  if (kind == DataKind::kBinary) {
    return Dataset(num_vars, 2, true, std::move(values), {"csv", 0});
  }
  const int k = alphabet > 0 ? alphabet : std::max(2, max_symbol);
  return Dataset(num_vars, k, false, std::move(values), {"csv", 0});
}

}  // namespace dpmrf
