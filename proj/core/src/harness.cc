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

#include "dpmrf/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <memory>
#include <set>
#include <sstream>

#include "dpmrf/error.h"
#include "dpmrf/format.h"
#include "dpmrf/learners.h"
#include "dpmrf/oracle.h"
#include "dpmrf/parallel.h"
#include "dpmrf/privacy.h"
#include "dpmrf/rng.h"
#include "dpmrf/sampler.h"
#include "dpmrf/structure.h"

namespace dpmrf {
namespace {

const std::set<std::string> kSpecKeys = {
    "name",   "model",      "task",   "objective",  "privacy", "grid",
    "trials", "master_seed", "lambda", "tolerances", "iterations", "blocks",
    "sampler", "gibbs_burn_in", "timeout_seconds"};

double MaxIsingError(const IsingModel& truth, const Matrix& estimate) {
  double worst = 0.0;
  for (int i = 0; i < truth.num_vars(); ++i) {
    for (int j = 0; j < truth.num_vars(); ++j) {
      if (i != j) worst = std::max(worst, std::abs(estimate(i, j) - truth.coupling(i, j)));
    }
  }
  return worst;
}

double MaxPairwiseError(const PairwiseModel& truth, const PairwiseEstimate& est) {
  const PairwiseModel centered = CenterPairwise(truth);
  double worst = 0.0;
  for (int i = 0; i < truth.num_vars(); ++i) {
    for (int j = i + 1; j < truth.num_vars(); ++j) {
      const Matrix w = centered.WeightMatrix(i, j);
      const Matrix& w_hat = est.W_hat.at({i, j});
      for (int a = 0; a < truth.alphabet(); ++a) {
        for (int b = 0; b < truth.alphabet(); ++b) {
          worst = std::max(worst, std::abs(w_hat(a, b) - w(a, b)));
        }
      }
    }
  }
  return worst;
}

double MaxMrfError(const BinaryMrf& truth, const MultilinearPolynomial& u, bool maximal_only) {
  const MultilinearPolynomial& h = truth.factorization();
  std::vector<MonomialIndex> targets;
  if (maximal_only) {
    targets = h.MaximalMonomials();
  } else {
    for (const auto& [m, c] : h.terms()) targets.push_back(m);
    for (const auto& [m, c] : u.terms()) targets.push_back(m);
  }
  double worst = 0.0;
  for (const MonomialIndex& m : targets) {
    if (m.empty()) continue;
    worst = std::max(worst, std::abs(u.Coefficient(m) - h.Coefficient(m)));
  }
  return worst;
}

struct Shared {
  std::shared_ptr<const ExactDistribution> dist;  // null when Gibbs sampling
};

Shared Prepare(const ExperimentSpec& spec) {
  Shared shared;
  const std::size_t cap = DefaultStateCap();
  bool exact = spec.sampler == "exact";
  if (spec.sampler == "auto") {
    const double states = std::pow(static_cast<double>(AlphabetSize(spec.model)),
                                   NumVars(spec.model));
    exact = states <= static_cast<double>(cap);
  }
  if (exact) {
    shared.dist = std::make_shared<ExactDistribution>(ComputeExactDistribution(spec.model, cap));
  }
  return shared;
}

Dataset Draw(const ExperimentSpec& spec, const Shared& shared, std::size_t n, uint64_t seed) {
  if (shared.dist) return ExactSample(*shared.dist, n, seed);
  GibbsOptions options;
  options.burn_in = spec.gibbs_burn_in;
  return GibbsSample(spec.model, n, seed, options);
}

void RunParameters(const ExperimentSpec& spec, const Dataset& data, uint64_t seed,
                   TrialResult& result) {
  LearnerOptions options;
  options.lambda = spec.lambda.value_or(Width(spec.model));
  options.non_private = spec.privacy == PrivacyKind::kNone;
  options.rho = options.non_private ? 1.0 : spec.LearnerRho();
  options.seed = seed;
  options.iterations = spec.iterations;
  Accountant accountant(options.non_private ? 0.0 : options.rho);

  double error = 0.0;
  if (const auto* ising = std::get_if<IsingModel>(&spec.model)) {
    error = MaxIsingError(*ising, LearnIsing(data, options, &accountant).A_hat);
  } else if (const auto* pairwise = std::get_if<PairwiseModel>(&spec.model)) {
    error = MaxPairwiseError(*pairwise, LearnPairwise(data, options, &accountant));
  } else {
    const auto& mrf = std::get<BinaryMrf>(spec.model);
    if (spec.objective == "linf") {
      error = MaxMrfError(mrf, LearnMrfLinf(data, mrf.order(), options, {}, &accountant).u, true);
    } else {
      error = MaxMrfError(mrf, LearnMrfL1(data, mrf.order(), options, &accountant).u, false);
    }
  }
  result.max_error = error;
  result.success = error <= spec.alpha;
  result.budget_spent = accountant.spent();
  result.budget_total = accountant.total();
  if (result.budget_spent > result.budget_total + 1e-9) {
    throw std::logic_error("trial spent more than its declared budget");
  }
}

void RunStructure(const ExperimentSpec& spec, const Dataset& data, uint64_t seed,
                  TrialResult& result) {
  BaseStructureConfig base;
  base.kind = std::holds_alternative<IsingModel>(spec.model)      ? ModelKind::kIsing
              : std::holds_alternative<PairwiseModel>(spec.model) ? ModelKind::kPairwise
                                                                  : ModelKind::kMrf;
  base.lambda = spec.lambda.value_or(Width(spec.model));
  base.eta = spec.eta.value_or(0.0);
  if (const auto* mrf = std::get_if<BinaryMrf>(&spec.model)) base.order = mrf->order();
  base.iterations = spec.iterations;
  base.seed = RngStream(seed).Child("base").key();

  GraphEstimate graph;
  if (spec.privacy == PrivacyKind::kNone) {
    graph = BaseStructure(data, base);
  } else {
    StabilityConfig config;
    config.epsilon = spec.epsilon;
    config.delta = spec.delta;
    config.blocks = spec.blocks;
    graph = StableModeStructure(data, MakeBaseLearner(base), config,
                                RngStream(seed).Child("stability").key())
                .graph;
    result.budget_spent = spec.epsilon;
    result.budget_total = spec.epsilon;
  }
  result.bottom = !graph.released;
  result.success = graph.released && graph.edges == DependencyEdges(spec.model);
}

TrialResult RunTrialShared(const ExperimentSpec& spec, const Shared& shared,
                           std::size_t n, int trial) {
  TrialResult result;
  result.n = n;
  result.trial = trial;
  result.seed = TrialSeed(spec.master_seed, n, trial);
  const auto start = std::chrono::steady_clock::now();
  try {
    ScopedDeadline deadline(std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(spec.timeout_seconds)));
    const RngStream root(result.seed);
    const Dataset data = Draw(spec, shared, n, root.Child("data").key());
    const uint64_t learner_seed = root.Child("learner").key();
    if (spec.task == Task::kParameters) {
      RunParameters(spec, data, learner_seed, result);
    } else {
      RunStructure(spec, data, learner_seed, result);
    }
  } catch (const Error& e) {
    result.status = e.code() == ErrorCode::kTimeout ? "timeout" : std::string(ErrorCodeName(e.code()));
    result.message = e.what();
    result.success = false;
    result.max_error.reset();
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string Num(double v) { return FormatDouble(v); }

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ExperimentSpec ExperimentSpec::FromJson(const Json& j) {
  return [&] {
    try {
      Require(j.is_object(), "experiment spec must be a JSON object");
      for (const auto& [key, value] : j.items()) {
        if (!kSpecKeys.count(key)) Fail(ErrorCode::kParse, "unknown spec key '" + key + "'");
      }
      ExperimentSpec spec;
      spec.name = j.value("name", spec.name);
      spec.model = ModelFromJson(j.at("model"));
      const std::string task = j.value("task", std::string("parameters"));
      if (task == "parameters") {
        spec.task = Task::kParameters;
      } else if (task == "structure") {
        spec.task = Task::kStructure;
      } else {
        Fail(ErrorCode::kParse, "task must be 'parameters' or 'structure'");
      }
      spec.objective = j.value("objective", spec.objective);
      Require(spec.objective == "l1" || spec.objective == "linf", "objective must be l1 or linf");

      const Json privacy = j.value("privacy", Json{{"type", "none"}});
      const std::string kind = privacy.at("type").get<std::string>();
      if (kind == "none") {
        spec.privacy = PrivacyKind::kNone;
      } else if (kind == "pure") {
        spec.privacy = PrivacyKind::kPure;
        spec.epsilon = privacy.at("eps").get<double>();
        Require(spec.epsilon > 0, "eps must be positive");
      } else if (kind == "zcdp") {
        spec.privacy = PrivacyKind::kZcdp;
        spec.rho = privacy.at("rho").get<double>();
        Require(spec.rho > 0, "rho must be positive");
      } else if (kind == "approx") {
        spec.privacy = PrivacyKind::kApprox;
        spec.epsilon = privacy.at("eps").get<double>();
        spec.delta = privacy.at("delta").get<double>();
        Require(spec.epsilon > 0, "eps must be positive");
        Require(spec.delta > 0 && spec.delta < 1, "delta must lie in (0, 1)");
      } else {
        Fail(ErrorCode::kParse, "privacy type must be none, pure, zcdp or approx");
      }
      if (spec.task == Task::kStructure) {
        Require(spec.privacy == PrivacyKind::kNone || spec.privacy == PrivacyKind::kApprox,
                "structure experiments use privacy none or approx");
      }

      const Json& grid = j.at("grid");
      spec.grid = (grid.is_object() ? grid.at("n") : grid).get<std::vector<std::size_t>>();
      Require(!spec.grid.empty(), "grid must list at least one n");
      for (std::size_t n : spec.grid) Require(n >= 1, "grid entries must be positive");
      spec.trials = j.value("trials", 1);
      Require(spec.trials >= 1, "trials must be at least 1");
      spec.master_seed = j.value("master_seed", uint64_t{0});
      if (j.contains("lambda")) {
        spec.lambda = j.at("lambda").get<double>();
        Require(*spec.lambda > 0, "lambda must be positive");
      }
      if (j.contains("tolerances")) {
        const Json& tol = j.at("tolerances");
        spec.alpha = tol.value("alpha", spec.alpha);
        if (tol.contains("eta")) spec.eta = tol.at("eta").get<double>();
      }
      Require(spec.alpha > 0, "alpha must be positive");
      if (spec.task == Task::kStructure && !spec.eta) {
        spec.eta = std::visit(
            [](const auto& m) -> double {
              using T = std::decay_t<decltype(m)>;
              if constexpr (std::is_same_v<T, IsingModel>) return IsingMinEdge(m);
              else if constexpr (std::is_same_v<T, PairwiseModel>) return PairwiseMinEdge(m);
              else Fail(ErrorCode::kInvalidArgument, "t-wise structure experiments need tolerances.eta");
            },
            spec.model);
      }
      if (spec.eta) Require(*spec.eta > 0, "eta must be positive");
      if (j.contains("iterations")) spec.iterations = j.at("iterations").get<int>();
      spec.blocks = j.value("blocks", 0);
      spec.sampler = j.value("sampler", spec.sampler);
      Require(spec.sampler == "auto" || spec.sampler == "exact" || spec.sampler == "gibbs",
              "sampler must be auto, exact or gibbs");
      spec.gibbs_burn_in = j.value("gibbs_burn_in", spec.gibbs_burn_in);
      spec.timeout_seconds = j.value("timeout_seconds", spec.timeout_seconds);
      Require(spec.timeout_seconds > 0, "timeout must be positive");
      return spec;
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kParse, std::string("experiment spec: ") + e.what());
    }
  }();
}

double ExperimentSpec::LearnerRho() const {
  switch (privacy) {
    case PrivacyKind::kNone: return 0.0;
    case PrivacyKind::kPure: return PureToZcdp(epsilon);
    case PrivacyKind::kZcdp: return rho;
    case PrivacyKind::kApprox: return ApproxToZcdp(epsilon, delta);
  }
  return 0.0;
}

uint64_t TrialSeed(uint64_t master_seed, std::size_t n, int trial) {
  return RngStream(master_seed).Child("trial").Child(n).Child(static_cast<uint64_t>(trial)).key();
}

TrialResult RunTrial(const ExperimentSpec& spec, std::size_t n, int trial) {
  return RunTrialShared(spec, Prepare(spec), n, trial);
}

std::vector<TrialResult> RunExperiment(const ExperimentSpec& spec, int threads) {
  const Shared shared = Prepare(spec);
  std::vector<std::size_t> grid = spec.grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<std::pair<std::size_t, int>> jobs;
  for (std::size_t n : grid) {
    for (int t = 0; t < spec.trials; ++t) jobs.emplace_back(n, t);
  }
  std::vector<TrialResult> results(jobs.size());
  ParallelFor(jobs.size(), threads, [&](std::size_t k) {
    results[k] = RunTrialShared(spec, shared, jobs[k].first, jobs[k].second);
  });
  return results;
}

std::vector<SummaryRow> Summarize(const std::vector<TrialResult>& results) {
  std::vector<SummaryRow> rows;
  std::size_t begin = 0;
  while (begin < results.size()) {
    std::size_t end = begin;
    while (end < results.size() && results[end].n == results[begin].n) ++end;
    SummaryRow row;
    row.n = results[begin].n;
    row.trials = static_cast<int>(end - begin);
    std::vector<double> errors;
    int successes = 0, bottoms = 0, failures = 0;
    double wall = 0.0;
    for (std::size_t r = begin; r < end; ++r) {
      successes += results[r].success;
      bottoms += results[r].bottom;
      failures += results[r].status != "ok";
      wall += results[r].wall_seconds;
      if (results[r].max_error) errors.push_back(*results[r].max_error);
    }
    row.success_rate = static_cast<double>(successes) / row.trials;
    row.bottom_rate = static_cast<double>(bottoms) / row.trials;
    row.failure_rate = static_cast<double>(failures) / row.trials;
    row.mean_wall_seconds = wall / row.trials;
    if (!errors.empty()) {
      std::sort(errors.begin(), errors.end());
      const std::size_t m = errors.size();
      row.median_error = m % 2 ? errors[m / 2] : 0.5 * (errors[m / 2 - 1] + errors[m / 2]);
    }
    rows.push_back(row);
    begin = end;
  }
  return rows;
}

void WriteResultsCsv(std::ostream& out, const std::vector<TrialResult>& results) {
  out << "n,trial,seed,status,max_error,success,bottom,budget_spent,budget_total,message\n";
  for (const TrialResult& r : results) {
    out << r.n << ',' << r.trial << ',' << r.seed << ',' << r.status << ','
        << (r.max_error ? Num(*r.max_error) : "") << ',' << (r.success ? 1 : 0) << ','
        << (r.bottom ? 1 : 0) << ',' << Num(r.budget_spent) << ',' << Num(r.budget_total)
        << ',' << CsvField(r.message) << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "n,trials,success_rate,median_error,bottom_rate,failure_rate\n";
  for (const SummaryRow& r : rows) {
    out << r.n << ',' << r.trials << ',' << Num(r.success_rate) << ','
        << (r.median_error ? Num(*r.median_error) : "") << ',' << Num(r.bottom_rate) << ','
        << Num(r.failure_rate) << '\n';
  }
}

void WriteTimingCsv(std::ostream& out, const std::vector<TrialResult>& results) {
  out << "n,trial,wall_seconds\n";
  for (const TrialResult& r : results) {
    out << r.n << ',' << r.trial << ',' << Num(r.wall_seconds) << '\n';
  }
}

void WriteSummaryTable(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << std::left << std::setw(10) << "n" << std::setw(8) << "trials" << std::setw(10)
      << "success" << std::setw(14) << "median_err" << std::setw(9) << "bottom"
      << std::setw(9) << "failed" << "mean_wall_s\n";
  for (const SummaryRow& r : rows) {
    std::ostringstream median;
    if (r.median_error) median << std::setprecision(4) << *r.median_error;
    else median << "-";
    out << std::left << std::setw(10) << r.n << std::setw(8) << r.trials << std::setw(10)
        << std::setprecision(3) << r.success_rate << std::setw(14) << median.str()
        << std::setw(9) << r.bottom_rate << std::setw(9) << r.failure_rate
        << std::setprecision(4) << r.mean_wall_seconds << '\n';
  }
}

void WritePlotData(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "n,success_rate\n";
  for (const SummaryRow& r : rows) out << r.n << ',' << Num(r.success_rate) << '\n';
}

}  // namespace dpmrf
