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

#ifndef CRSADV_REPORT_H_
#define CRSADV_REPORT_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsadv/errors.h"
#include "crsadv/metrics.h"
#include "crsadv/perturb.h"
#include "crsadv/types.h"
#include "json.hpp"

namespace crsadv::report {

struct Thresholds {
  // Cat1 is fooled when any metric drops by more than this fraction.
  double cat1_tolerance = 0.05;
  // Cat2 is insensitive when fewer than this fraction of top-1 items move.
  double cat2_shift = 0.5;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

inline constexpr std::string_view kFooledByCat1 = "FOOLED_BY_CAT1";
inline constexpr std::string_view kInsensitiveToCat2 = "INSENSITIVE_TO_CAT2";

// Per-instance outcome on one side of a comparison.
struct ScoredInstance {
  metrics::InstanceScore score;
  std::optional<ItemId> top1;
};

class UnpairedInstancesError : public Error {
 public:
  UnpairedInstancesError(std::vector<std::string> only_original,
                         std::vector<std::string> only_adversarial);
  const std::vector<std::string>& only_original() const { return only_original_; }
  const std::vector<std::string>& only_adversarial() const {
    return only_adversarial_;
  }

 private:
  std::vector<std::string> only_original_;
  std::vector<std::string> only_adversarial_;
};

struct RobustnessReport {
  perturb::Scenario scenario = perturb::Scenario::kCat1Change;
  perturb::Expectation expectation = perturb::Expectation::kSamePrediction;
  metrics::MetricReport original;
  metrics::MetricReport adversarial;
  // (adv - orig) / orig per metric and cutoff; unset where orig is 0 or
  // either side is undefined.
  std::array<std::vector<std::optional<double>>, 3> delta;
  double shift_rate = 0.0;
  std::size_t n_paired = 0;
  std::vector<std::string> verdicts;
  Thresholds thresholds;

  std::optional<double> Delta(metrics::Metric metric, int k) const;

  friend bool operator==(const RobustnessReport&,
                         const RobustnessReport&) = default;
};

// Relative change, unset when `orig` is zero or either side is missing.
std::optional<double> RelativeDelta(std::optional<double> orig,
                                    std::optional<double> adv);

// Fills deltas and verdicts from two aggregates.
RobustnessReport CompareReports(const metrics::MetricReport& original,
                                const metrics::MetricReport& adversarial,
                                perturb::Scenario scenario, double shift_rate,
                                std::size_t n_paired,
                                const Thresholds& thresholds = {});

// Pairs instances by id (both sides must hold the same id set, else
// UnpairedInstancesError), aggregates each side and measures top-1 shift.
RobustnessReport Compare(std::span<const ScoredInstance> original,
                         std::span<const ScoredInstance> adversarial,
                         perturb::Scenario scenario, std::span<const int> cutoffs,
                         const Thresholds& thresholds = {},
                         std::size_t n_failed = 0);

// One model's reports plus the aggregate over every scored original
// instance, which is the "Original" row of the table.
struct ReportBundle {
  std::string adapter;
  metrics::MetricReport overall_original;
  std::vector<RobustnessReport> reports;

  friend bool operator==(const ReportBundle&, const ReportBundle&) = default;
};

enum class Format { kJson, kCsv, kMarkdown };
std::optional<Format> ParseFormat(std::string_view text);

nlohmann::json ToJson(const RobustnessReport& report);
RobustnessReport RobustnessReportFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const ReportBundle& bundle);
ReportBundle BundleFromJson(const nlohmann::json& j);

// json: the bundle; csv: one row per scenario x metric x cutoff; markdown:
// per category, a table holding the Original row and that category's
// scenario rows to four decimals, then a table of relative changes.
std::string Render(const ReportBundle& bundle, Format format);

}  // namespace crsadv::report

#endif  // CRSADV_REPORT_H_
