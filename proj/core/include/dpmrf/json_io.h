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

#ifndef DPMRF_JSON_IO_H_
#define DPMRF_JSON_IO_H_

#include <string>

#include "json.hpp"

#include "dpmrf/models.h"
#include "dpmrf/polynomial.h"
#include "dpmrf/privacy.h"
#include "dpmrf/query_release.h"
#include "dpmrf/structure.h"

namespace dpmrf {

using Json = nlohmann::ordered_json;

// {"p": p, "terms": [{"vars": [...], "coef": c}, ...]} in canonical order.
Json PolynomialToJson(const MultilinearPolynomial& poly);
MultilinearPolynomial PolynomialFromJson(const Json& j);

// {"type":"ising","p","A","theta"}, {"type":"pairwise","p","k","W":{"i,j":..},
// "Theta"}, {"type":"mrf","t","h"}. Reading additionally accepts the fixture
// descriptor {"type":"matched_pairs","p","eta"} where "eta" is a number or a
// list of p/2 numbers.
Json ModelToJson(const Model& model);
Model ModelFromJson(const Json& j);

// {"t": t, "entries": [{"vars": [...], "value": v}, ...]}. Reading needs "p"
// or infers it from the largest index.
Json ParityTableToJson(const ParityTable& table);
ParityTable ParityTableFromJson(const Json& j, int num_vars = 0);

// {"p": p, "released": bool, "edges": [[i, j], ...]}.
Json GraphToJson(const GraphEstimate& graph);
GraphEstimate GraphFromJson(const Json& j);

// [{"label": ..., "rho": ...}, ...]
Json LedgerToJson(const Accountant& accountant);

// Throws kParse with the path in the message.
Json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const Json& j);

}  // namespace dpmrf

#endif  // DPMRF_JSON_IO_H_
