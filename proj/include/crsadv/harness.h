//
// Copyright 2026 The crsadv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef CRSADV_HARNESS_H_
#define CRSADV_HARNESS_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsadv/adapter.h"
#include "crsadv/metrics.h"
#include "crsadv/perturb.h"
#include "crsadv/report.h"
#include "crsadv/types.h"
#include "json.hpp"

// Runs a recommender over many requests and stores the outcome per
// instance. Failures are recorded, never thrown.
namespace crsadv::harness {

struct Job {
  adapter::RecommendRequest request;
  std::vector<ItemId> truth;
  // Skipped jobs are recorded without calling the recommender.
  bool skipped = false;
};

struct Outcome {
  std::string id;
  std::vector<ItemId> truth;
  std::vector<ItemId> items;
  std::optional<int> rank;
  bool failed = false;
  std::string error;
  bool skipped = false;

  bool Scored() const { return !failed && !skipped; }
  std::optional<ItemId> Top1() const;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Spreads `jobs` over `workers` threads, each owning one recommender from
// `factory`. Output order equals input order whatever the worker count.
std::vector<Outcome> Run(std::span<const Job> jobs,
                         const adapter::RecommenderFactory& factory, int workers);

// Jobs for the original answers: one per distinct base instance across
// `files`, in first-appearance order.
std::vector<Job> OriginalJobs(std::span<const perturb::PerturbedFile> files,
                              int k_max);
// Jobs for A'; skipped perturbations become skipped jobs.
std::vector<Job> AdversarialJobs(const perturb::PerturbedFile& file, int k_max);

inline constexpr std::string_view kScoresSchema = "crsadv.scores/1";

struct ScoresHeader {
  // "original" or a scenario name.
  std::string input;
  std::string adapter;
  std::vector<int> cutoffs;

  friend bool operator==(const ScoresHeader&, const ScoresHeader&) = default;
};

struct ScoresFile {
  ScoresHeader header;
  std::vector<Outcome> outcomes;
};

void WriteScores(std::ostream& out, const ScoresFile& file);
ScoresFile ReadScores(std::istream& in);
ScoresFile ReadScores(const std::filesystem::path& path);

// Per-instance metrics for scored outcomes, as CSV.
void WriteScoresCsv(std::ostream& out, const ScoresFile& file);

struct Summary {
  std::size_t total = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
};
Summary Summarize(std::span<const Outcome> outcomes);

// Pairs an adversarial score file with the original one. Every adversarial
// id must appear in the original file. Skipped instances are dropped;
// instances failed on either side are dropped and counted as failed.
report::RobustnessReport CompareScores(const ScoresFile& original,
                                       const ScoresFile& adversarial,
                                       perturb::Scenario scenario,
                                       const report::Thresholds& thresholds = {});

// Aggregate over every scored original outcome.
metrics::MetricReport OverallOriginal(const ScoresFile& original);

}  // namespace crsadv::harness

#endif  // CRSADV_HARNESS_H_
