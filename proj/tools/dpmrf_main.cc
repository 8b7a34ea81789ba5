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

// Command-line front end: sampling, the four learners, parity release,
// structure learning, budget arithmetic and experiment sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpmrf/dataset.h"
#include "dpmrf/error.h"
#include "dpmrf/format.h"
#include "dpmrf/harness.h"
#include "dpmrf/json_io.h"
#include "dpmrf/learners.h"
#include "dpmrf/oracle.h"
#include "dpmrf/privacy.h"
#include "dpmrf/query_release.h"
#include "dpmrf/sampler.h"
#include "dpmrf/structure.h"

namespace {

using namespace dpmrf;

Dataset LoadData(const std::string& path, DataKind kind, int alphabet = 0) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kInvalidArgument, "cannot open " + path);
  return ReadDatasetCsv(in, kind, alphabet);
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kInvalidArgument, "cannot write " + path);
  return out;
}

struct LearnArgs {
  std::string data, out, ledger;
  double lambda = 1.0;
  double rho = 1.0;
  uint64_t seed = 0;
  int threads = 1;
  int iterations = 0;
  bool non_private = false;
  bool no_clamp = false;
};

void AddLearnOptions(CLI::App* app, LearnArgs& a) {
  app->add_option("--data", a.data, "Dataset CSV")->required();
  app->add_option("--out", a.out, "Estimate JSON")->required();
  app->add_option("--lambda", a.lambda, "Width bound")->required();
  app->add_option("--rho", a.rho, "zCDP budget");
  app->add_option("--seed", a.seed, "Master seed");
  app->add_option("--threads", a.threads, "Worker threads");
  app->add_option("--iterations", a.iterations, "Frank-Wolfe iteration override");
  app->add_option("--ledger", a.ledger, "Write the budget ledger CSV here");
  app->add_flag("--non-private", a.non_private, "Zero-noise mode (no privacy)");
  app->add_flag("--no-clamp", a.no_clamp, "Skip clamping edge estimates");
}

LearnerOptions ToOptions(const LearnArgs& a) {
  LearnerOptions o;
  o.lambda = a.lambda;
  o.rho = a.rho;
  o.non_private = a.non_private;
  o.seed = a.seed;
  o.threads = a.threads;
  o.clamp = !a.no_clamp;
  if (a.iterations > 0) o.iterations = a.iterations;
  return o;
}

Json Metadata(const LearnArgs& a, const Accountant& accountant,
              const std::vector<std::string>& warnings) {
  return Json{{"seed", a.seed},
              {"lambda", a.lambda},
              {"rho", a.non_private ? 0.0 : a.rho},
              {"non_private", a.non_private},
              {"ledger", LedgerToJson(accountant)},
              {"warnings", warnings}};
}

void Finish(const LearnArgs& a, Json estimate, const Accountant& accountant,
            const std::vector<std::string>& warnings) {
  estimate["metadata"] = Metadata(a, accountant, warnings);
  WriteJsonFile(a.out, estimate);
  if (!a.ledger.empty()) {
    auto out = OpenOut(a.ledger);
    accountant.WriteCsv(out);
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

int Run(int argc, char** argv) {
  CLI::App app{"Differentially private learning of Markov random fields"};
  app.require_subcommand(1);

  // sample
  std::string model_path, out_path, method = "exact";
  std::size_t n = 0;
  uint64_t seed = 0;
  int threads = 1, burn_in = 100, thin = 0;
  auto* sample = app.add_subcommand("sample", "Draw samples from a model");
  sample->add_option("--model", model_path, "Model JSON")->required();
  sample->add_option("--n", n, "Number of samples")->required();
  sample->add_option("--seed", seed, "Seed");
  sample->add_option("--method", method, "exact | gibbs")
      ->check(CLI::IsMember({"exact", "gibbs"}));
  sample->add_option("--burn-in", burn_in, "Gibbs sweeps per sample");
  sample->add_option("--thin", thin, "Extra Gibbs sweeps per sample");
  sample->add_option("--threads", threads, "Worker threads");
  sample->add_option("--out", out_path, "Output CSV")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Dump the exact distribution of a model");
  oracle->add_option("--model", model_path, "Model JSON")->required();
  oracle->add_option("--out", out_path, "Output CSV")->required();

  // learners
  LearnArgs la;
  auto* learn_ising = app.add_subcommand("learn-ising", "Private Ising parameter learning");
  AddLearnOptions(learn_ising, la);
  auto* learn_pairwise =
      app.add_subcommand("learn-pairwise", "Private pairwise-model parameter learning");
  AddLearnOptions(learn_pairwise, la);
  int alphabet = 0;
  learn_pairwise->add_option("--k", alphabet, "Alphabet size (inferred when omitted)");
  auto* learn_mrf = app.add_subcommand("learn-mrf", "Private binary t-wise MRF learning");
  AddLearnOptions(learn_mrf, la);
  int order = 2;
  std::string objective = "l1";
  double split = 0.5;
  int rounds = 0;
  learn_mrf->add_option("--t", order, "Interaction order")->required();
  learn_mrf->add_option("--objective", objective, "l1 | linf")
      ->check(CLI::IsMember({"l1", "linf"}));
  learn_mrf->add_option("--split", split, "Fraction of rows for the per-node fits (linf)");
  learn_mrf->add_option("--pmw-rounds", rounds, "Parity release rounds (linf)");

  // release-parities
  std::string data_path, ledger_path;
  double rho = 1.0;
  bool non_private = false;
  auto* release = app.add_subcommand("release-parities", "Release parities of order <= t");
  release->add_option("--data", data_path, "Dataset CSV")->required();
  release->add_option("--t", order, "Maximum order")->required();
  release->add_option("--rho", rho, "zCDP budget");
  release->add_option("--rounds", rounds, "PMW rounds (0: default)");
  release->add_option("--seed", seed, "Seed");
  release->add_option("--ledger", ledger_path, "Per-round ledger CSV");
  release->add_flag("--non-private", non_private, "Exact empirical parities");
  release->add_option("--out", out_path, "Output JSON")->required();

  // learn-structure
  std::string kind = "ising";
  double eta = 0.0, lambda = 1.0, eps = 1.0, delta = 1e-6;
  int blocks = 0, iterations = 0;
  auto* structure = app.add_subcommand("learn-structure", "(eps, delta)-DP structure learning");
  structure->add_option("--data", data_path, "Dataset CSV")->required();
  structure->add_option("--model", kind, "ising | pairwise | mrf")
      ->check(CLI::IsMember({"ising", "pairwise", "mrf"}));
  structure->add_option("--eta", eta, "Minimum edge weight")->required();
  structure->add_option("--lambda", lambda, "Width bound")->required();
  structure->add_option("--eps", eps, "Epsilon");
  structure->add_option("--delta", delta, "Delta");
  structure->add_option("--blocks", blocks, "Number of blocks (0: default)");
  structure->add_option("--t", order, "Interaction order (mrf)");
  structure->add_option("--k", alphabet, "Alphabet size (pairwise)");
  structure->add_option("--iterations", iterations, "Base learner iteration override");
  structure->add_option("--seed", seed, "Seed");
  structure->add_option("--threads", threads, "Worker threads");
  structure->add_flag("--non-private", non_private, "Run the base learner on all rows");
  structure->add_option("--out", out_path, "Graph JSON")->required();

  // accountant
  std::string convert;
  std::vector<std::string> spends;
  double total = 0.0;
  auto* accountant = app.add_subcommand("accountant", "Privacy conversions and ledgers");
  accountant->add_option("--convert", convert, "pure-to-zcdp | zcdp-to-approx | approx-to-zcdp")
      ->check(CLI::IsMember({"pure-to-zcdp", "zcdp-to-approx", "approx-to-zcdp"}));
  accountant->add_option("--eps", eps, "Epsilon");
  accountant->add_option("--rho", rho, "Rho");
  accountant->add_option("--delta", delta, "Delta");
  accountant->add_option("--total", total, "Ledger budget");
  accountant->add_option("--spend", spends, "label:rho, repeatable");
  accountant->add_option("--out", out_path, "Ledger CSV");

  // experiment
  std::string spec_path, summary_path, timing_path, plot_dir;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment sweep");
  experiment->add_option("--spec", spec_path, "Experiment spec JSON")->required();
  experiment->add_option("--out", out_path, "Per-trial results CSV")->required();
  experiment->add_option("--summary", summary_path, "Per-n summary CSV");
  experiment->add_option("--timing", timing_path, "Per-trial wall-clock CSV");
  experiment->add_option("--emit-plot-data", plot_dir, "Directory for (n, success_rate) files");
  experiment->add_option("--threads", threads, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  if (*sample) {
    const Model model = ModelFromJson(ReadJsonFile(model_path));
    Dataset data;
    if (method == "exact") {
      data = ExactSample(model, n, seed, threads);
    } else {
      data = GibbsSample(model, n, seed, GibbsOptions{burn_in, thin, threads});
    }
    auto out = OpenOut(out_path);
    WriteDatasetCsv(out, data);
  } else if (*oracle) {
    const ExactDistribution dist = ComputeExactDistribution(ModelFromJson(ReadJsonFile(model_path)));
    auto out = OpenOut(out_path);
    WriteDistributionCsv(out, dist);
  } else if (*learn_ising) {
    Accountant acct(la.non_private ? 0.0 : la.rho);
    const IsingEstimate est = LearnIsing(LoadData(la.data, DataKind::kBinary), ToOptions(la), &acct);
    Finish(la, ModelToJson(est.ToModel()), acct, {});
  } else if (*learn_pairwise) {
    Accountant acct(la.non_private ? 0.0 : la.rho);
    const PairwiseEstimate est =
        LearnPairwise(LoadData(la.data, DataKind::kCategorical, alphabet), ToOptions(la), &acct);
    Finish(la, ModelToJson(est.ToModel()), acct, est.warnings);
  } else if (*learn_mrf) {
    Accountant acct(la.non_private ? 0.0 : la.rho);
    const Dataset data = LoadData(la.data, DataKind::kBinary);
    MrfEstimate est;
    if (objective == "l1") {
      est = LearnMrfL1(data, order, ToOptions(la), &acct);
    } else {
      LinfOptions linf;
      linf.split = split;
      if (rounds > 0) {
        linf.release = [rounds](const Dataset& held_out, int t, double r, bool np,
                                Accountant* a, RngStream rng) {
          if (np) return EmpiricalParities(held_out, t);
          PmwOptions o;
          o.rho = r;
          o.rounds = rounds;
          o.rng = rng;
          return PmwRelease(held_out, t, o, a).table;
        };
      }
      est = LearnMrfLinf(data, order, ToOptions(la), linf, &acct);
    }
    Json j = ModelToJson(est.ToModel());
    if (est.parities) j["parities"] = ParityTableToJson(*est.parities);
    Finish(la, std::move(j), acct, est.warnings);
  } else if (*release) {
    const Dataset data = LoadData(data_path, DataKind::kBinary);
    Json j;
    if (non_private) {
      j = ParityTableToJson(EmpiricalParities(data, order));
    } else {
      Accountant acct(rho);
      PmwOptions o;
      o.rho = rho;
      o.rounds = rounds;
      o.rng = RngStream(seed).Child("parities");
      const PmwResult result = PmwRelease(data, order, o, &acct);
      j = ParityTableToJson(result.table);
      j["metadata"] = Json{{"seed", seed}, {"rho", rho}, {"rounds", result.rounds},
                           {"ledger", LedgerToJson(acct)}};
      if (!ledger_path.empty()) {
        auto out = OpenOut(ledger_path);
        result.round_ledger.WriteCsv(out);
      }
    }
    WriteJsonFile(out_path, j);
  } else if (*structure) {
    const ModelKind model_kind = ParseModelKind(kind);
    const Dataset data = LoadData(data_path, model_kind == ModelKind::kPairwise
                                                 ? DataKind::kCategorical
                                                 : DataKind::kBinary,
                                  alphabet);
    BaseStructureConfig base;
    base.kind = model_kind;
    base.lambda = lambda;
    base.eta = eta;
    base.order = order;
    base.seed = RngStream(seed).Child("base").key();
    if (iterations > 0) base.iterations = iterations;
    Json j;
    if (non_private) {
      j = GraphToJson(BaseStructure(data, base));
    } else {
      StabilityConfig config;
      config.epsilon = eps;
      config.delta = delta;
      config.blocks = blocks;
      config.threads = threads;
      const StructureResult result = StableModeStructure(data, MakeBaseLearner(base), config, seed);
      j = GraphToJson(result.graph);
      j["metadata"] = Json{{"eps", eps},
                           {"delta", delta},
                           {"blocks", result.blocks},
                           {"block_size", result.block_size},
                           {"seed", seed}};
      if (!result.graph.released) std::cerr << "no graph released (bottom outcome)\n";
    }
    WriteJsonFile(out_path, j);
  } else if (*accountant) {
    if (convert == "pure-to-zcdp") {
      std::cout << "rho=" << FormatDouble(PureToZcdp(eps)) << '\n';
    } else if (convert == "zcdp-to-approx") {
      std::cout << "eps=" << FormatDouble(ZcdpToApprox(rho, delta))
                << " delta=" << FormatDouble(delta) << '\n';
    } else if (convert == "approx-to-zcdp") {
      std::cout << "rho=" << FormatDouble(ApproxToZcdp(eps, delta)) << '\n';
    }
    if (!spends.empty() || !out_path.empty()) {
      Accountant acct(total);
      for (const std::string& s : spends) {
        const auto colon = s.rfind(':');
        if (colon == std::string::npos) Fail(ErrorCode::kParse, "spend must look like label:rho");
        double value = 0.0;
        try {
          value = std::stod(s.substr(colon + 1));
        } catch (const std::exception&) {
          Fail(ErrorCode::kParse, "bad spend amount in '" + s + "'");
        }
        acct.Spend(s.substr(0, colon), value);
      }
      if (out_path.empty()) {
        acct.WriteCsv(std::cout);
      } else {
        auto out = OpenOut(out_path);
        acct.WriteCsv(out);
      }
    }
  } else if (*experiment) {
    const ExperimentSpec spec = ExperimentSpec::FromJson(ReadJsonFile(spec_path));
    const std::vector<TrialResult> results = RunExperiment(spec, threads);
    const std::vector<SummaryRow> rows = Summarize(results);
    {
      auto out = OpenOut(out_path);
      WriteResultsCsv(out, results);
    }
    if (!summary_path.empty()) {
      auto out = OpenOut(summary_path);
      WriteSummaryCsv(out, rows);
    }
    if (!timing_path.empty()) {
      auto out = OpenOut(timing_path);
      WriteTimingCsv(out, results);
    }
    if (!plot_dir.empty()) {
      std::filesystem::create_directories(plot_dir);
      auto out = OpenOut((std::filesystem::path(plot_dir) / (spec.name + ".csv")).string());
      WritePlotData(out, rows);
    }
    WriteSummaryTable(std::cout, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const dpmrf::Error& e) {
    std::cerr << "error [" << dpmrf::ErrorCodeName(e.code()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
