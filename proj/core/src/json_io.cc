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

#include "dpmrf/json_io.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "dpmrf/error.h"

namespace dpmrf {
namespace {

Json MatrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix MatrixFromJson(const Json& j, std::size_t rows, std::size_t cols,
                      const std::string& what) {
  if (!j.is_array() || j.size() != rows) {
    Fail(ErrorCode::kParse, what + " must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      Fail(ErrorCode::kParse, what + " must have " + std::to_string(cols) + " columns");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

MonomialIndex VarsFromJson(const Json& j) {
  return MonomialIndex(j.get<std::vector<int>>());
}

Json VarsToJson(const MonomialIndex& m) { return Json(m.indices()); }

template <typename Fn>
auto Parsing(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kParse, what + ": " + e.what());
  }
}

}  // namespace

Json PolynomialToJson(const MultilinearPolynomial& poly) {
  Json terms = Json::array();
  for (const auto& [monomial, coef] : poly.terms()) {
    terms.push_back(Json{{"vars", VarsToJson(monomial)}, {"coef", coef}});
  }
  return Json{{"p", poly.num_vars()}, {"terms", std::move(terms)}};
}

MultilinearPolynomial PolynomialFromJson(const Json& j) {
  return Parsing("polynomial", [&] {
    MultilinearPolynomial poly(j.at("p").get<int>());
    for (const Json& term : j.at("terms")) {
      poly.AddTerm(VarsFromJson(term.at("vars")), term.at("coef").get<double>());
    }
    return poly;
  });
}

Json ModelToJson(const Model& model) {
  if (const auto* ising = std::get_if<IsingModel>(&model)) {
    return Json{{"type", "ising"},
                {"p", ising->num_vars()},
                {"A", MatrixToJson(ising->couplings())},
                {"theta", ising->bias()}};
  }
  if (const auto* pairwise = std::get_if<PairwiseModel>(&model)) {
    Json w = Json::object();
    for (const auto& [edge, m] : pairwise->weights()) {
      w[std::to_string(edge.first) + "," + std::to_string(edge.second)] = MatrixToJson(m);
    }
    return Json{{"type", "pairwise"},
                {"p", pairwise->num_vars()},
                {"k", pairwise->alphabet()},
                {"W", std::move(w)},
                {"Theta", MatrixToJson(pairwise->theta())}};
  }
  const auto& mrf = std::get<BinaryMrf>(model);
  return Json{{"type", "mrf"}, {"t", mrf.order()}, {"h", PolynomialToJson(mrf.factorization())}};
}

Model ModelFromJson(const Json& j) {
  return Parsing("model", [&]() -> Model {
    const std::string type = j.at("type").get<std::string>();
    if (type == "ising") {
      const int p = j.at("p").get<int>();
      Matrix a = MatrixFromJson(j.at("A"), p, p, "A");
      std::vector<double> theta =
          j.contains("theta") ? j.at("theta").get<std::vector<double>>()
                              : std::vector<double>(p, 0.0);
      Require(static_cast<int>(theta.size()) == p, "theta must have p entries");
      return IsingModel(std::move(a), std::move(theta));
    }
    if (type == "pairwise") {
      const int p = j.at("p").get<int>();
      const int k = j.at("k").get<int>();
      PairwiseModel model(p, k);
      for (const auto& [key, value] : j.at("W").items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos) Fail(ErrorCode::kParse, "W keys look like \"i,j\"");
        int a = 0, b = 0;
        try {
          a = std::stoi(key.substr(0, comma));
          b = std::stoi(key.substr(comma + 1));
        } catch (const std::exception&) {
          Fail(ErrorCode::kParse, "bad W key '" + key + "'");
        }
        model.SetWeight(a, b, MatrixFromJson(value, k, k, "W[" + key + "]"));
      }
      if (j.contains("Theta")) {
        const Matrix theta = MatrixFromJson(j.at("Theta"), p, k, "Theta");
        for (int i = 0; i < p; ++i) model.SetTheta(i, theta.row(i));
      }
      return model;
    }
    if (type == "mrf") {
      return BinaryMrf(j.at("t").get<int>(), PolynomialFromJson(j.at("h")));
    }
    if (type == "matched_pairs") {
      if (j.at("eta").is_array()) {
        const auto etas = j.at("eta").get<std::vector<double>>();
        if (j.contains("p")) {
          Require(j.at("p").get<std::size_t>() == 2 * etas.size(),
                  "matched_pairs needs p/2 eta values");
        }
        return MatchedPairsIsing(etas);
      }
      return MatchedPairsIsing(j.at("p").get<int>(), j.at("eta").get<double>());
    }
    Fail(ErrorCode::kParse, "unknown model type '" + type + "'");
  });
}

Json ParityTableToJson(const ParityTable& table) {
  Json entries = Json::array();
  for (const auto& [monomial, value] : table.entries()) {
    entries.push_back(Json{{"vars", VarsToJson(monomial)}, {"value", value}});
  }
  return Json{{"p", table.num_vars()}, {"t", table.order()}, {"entries", std::move(entries)}};
}

ParityTable ParityTableFromJson(const Json& j, int num_vars) {
  return Parsing("parity table", [&] {
    int p = j.contains("p") ? j.at("p").get<int>() : num_vars;
    if (p == 0) {
      for (const Json& e : j.at("entries")) {
        p = std::max(p, VarsFromJson(e.at("vars")).MaxIndex() + 1);
      }
    }
    ParityTable table(p, j.at("t").get<int>());
    for (const Json& e : j.at("entries")) {
      table.Set(VarsFromJson(e.at("vars")), e.at("value").get<double>());
    }
    return table;
  });
}

Json GraphToJson(const GraphEstimate& graph) {
  Json edges = Json::array();
  for (const auto& [a, b] : graph.edges) edges.push_back(Json::array({a, b}));
  return Json{{"p", graph.num_vars}, {"released", graph.released}, {"edges", std::move(edges)}};
}

GraphEstimate GraphFromJson(const Json& j) {
  return Parsing("graph", [&] {
    GraphEstimate graph;
    graph.num_vars = j.at("p").get<int>();
    graph.released = j.at("released").get<bool>();
    for (const Json& e : j.at("edges")) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      Require(a != b && a >= 0 && b >= 0 && a < graph.num_vars && b < graph.num_vars,
              "graph edge out of range");
      graph.edges.insert({std::min(a, b), std::max(a, b)});
    }
    Require(graph.released || graph.edges.empty(), "an unreleased graph has no edges");
    return graph;
  });
}

Json LedgerToJson(const Accountant& accountant) {
  Json out = Json::array();
  for (const auto& entry : accountant.ledger()) {
    out.push_back(Json{{"label", entry.label}, {"rho", entry.rho}});
  }
  return out;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kParse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kParse, path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace dpmrf
