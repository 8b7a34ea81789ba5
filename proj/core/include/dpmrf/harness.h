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

#ifndef DPMRF_HARNESS_H_
#define DPMRF_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dpmrf/json_io.h"
#include "dpmrf/models.h"

namespace dpmrf {

enum class Task { kParameters, kStructure };
enum class PrivacyKind { kNone, kPure, kZcdp, kApprox };

struct ExperimentSpec {
  std::string name = "experiment";
  Model model;
  Task task = Task::kParameters;
  // "l1" or "linf"; only used for t-wise models.
  std::string objective = "l1";
  PrivacyKind privacy = PrivacyKind::kNone;
  double epsilon = 0.0;
  double delta = 0.0;
  double rho = 0.0;
  std::vector<std::size_t> grid;  // sample sizes n
  int trials = 1;
  uint64_t master_seed = 0;
  std::optional<double> lambda;   // defaults to the model's width
  double alpha = 0.1;             // parameter success tolerance
  std::optional<double> eta;      // defaults to the model's minimum edge weight
  std::optional<int> iterations;  // Frank-Wolfe T override
  int blocks = 0;                 // structure: 0 selects the default
  std::string sampler = "auto";   // "exact" | "gibbs" | "auto"
  int gibbs_burn_in = 200;
  double timeout_seconds = 300.0;

  // Validates and fills defaults. Unknown keys are rejected.
  static ExperimentSpec FromJson(const Json& j);
  // Zero-concentrated budget handed to the parameter learners.
  double LearnerRho() const;
};

struct TrialResult {
  std::size_t n = 0;
  int trial = 0;
  uint64_t seed = 0;
  std::string status = "ok";     // ok | timeout | <error code name>
  std::string message;
  std::optional<double> max_error;  // parameter task
  bool success = false;
  bool bottom = false;             // structure task
  double budget_spent = 0.0;       // rho (parameters) or epsilon (structure)
  double budget_total = 0.0;
  double wall_seconds = 0.0;       // reported only in the timing file
};

// Seed of trial `trial` at sample size n; independent of grid order.
uint64_t TrialSeed(uint64_t master_seed, std::size_t n, int trial);

// Runs one trial. Module errors and timeouts are captured in the result.
TrialResult RunTrial(const ExperimentSpec& spec, std::size_t n, int trial);

// All (n, trial) pairs on a pool of `threads` workers, sorted by (n, trial).
std::vector<TrialResult> RunExperiment(const ExperimentSpec& spec, int threads = 1);

struct SummaryRow {
  std::size_t n = 0;
  int trials = 0;
  double success_rate = 0.0;
  std::optional<double> median_error;
  double bottom_rate = 0.0;
  double failure_rate = 0.0;  // trials that ended in an error or timeout
  double mean_wall_seconds = 0.0;
};

std::vector<SummaryRow> Summarize(const std::vector<TrialResult>& results);

// Deterministic outputs: no wall-clock columns.
void WriteResultsCsv(std::ostream& out, const std::vector<TrialResult>& results);
void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows);
// Wall-clock outputs, kept apart so the files above replay byte for byte.
void WriteTimingCsv(std::ostream& out, const std::vector<TrialResult>& results);
void WriteSummaryTable(std::ostream& out, const std::vector<SummaryRow>& rows);
// "n,success_rate" per line.
void WritePlotData(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace dpmrf

#endif  // DPMRF_HARNESS_H_
