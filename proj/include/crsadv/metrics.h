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

#ifndef CRSADV_METRICS_H_
#define CRSADV_METRICS_H_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsadv/types.h"
#include "json.hpp"

namespace crsadv::metrics {

enum class Metric { kHit, kMrr, kNdcg };
inline constexpr std::array<Metric, 3> kAllMetrics = {Metric::kHit, Metric::kMrr,
                                                      Metric::kNdcg};
std::string_view ToString(Metric metric);
std::optional<Metric> ParseMetric(std::string_view text);

inline constexpr std::array<int, 3> kDefaultCutoffs = {1, 10, 50};

// Single-relevant-item metrics for best (1-based) rank `rank` at cutoff k.
double HitAt(std::optional<int> rank, int k);
double MrrAt(std::optional<int> rank, int k);
double NdcgAt(std::optional<int> rank, int k);
double Value(Metric metric, std::optional<int> rank, int k);

// Smallest 1-based position of any truth item in `ranking`.
std::optional<int> BestRank(std::span<const ItemId> truth,
                            std::span<const ItemId> ranking);

struct InstanceScore {
  std::string instance_id;
  std::optional<int> rank;
  std::vector<int> cutoffs;
  // values[m][c] for metric m (kAllMetrics order) and cutoff index c.
  std::array<std::vector<double>, 3> values;

  double Get(Metric metric, int k) const;

  friend bool operator==(const InstanceScore&, const InstanceScore&) = default;
};

InstanceScore Score(std::string instance_id, std::span<const ItemId> truth,
                    std::span<const ItemId> ranking, std::span<const int> cutoffs);

struct MetricReport {
  std::size_t n_instances = 0;
  std::size_t n_failed = 0;
  std::vector<int> cutoffs;
  // Mean per metric and cutoff; unset when n_instances is 0.
  std::array<std::vector<std::optional<double>>, 3> means;

  std::optional<double> Get(Metric metric, int k) const;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Arithmetic means over `scores`; `n_failed` is carried through untouched.
MetricReport Aggregate(std::span<const InstanceScore> scores,
                       std::span<const int> cutoffs, std::size_t n_failed = 0);

nlohmann::json ToJson(const MetricReport& report);
MetricReport MetricReportFromJson(const nlohmann::json& j);

// instance_id,rank,hit@1,...,ndcg@50. Missing ranks are empty cells.
void WriteScoresCsv(std::ostream& out, std::span<const InstanceScore> scores,
                    std::span<const int> cutoffs);

// Parses "1,10,50"; result sorted ascending, unique, all positive.
std::vector<int> ParseCutoffs(std::string_view text);

}  // namespace crsadv::metrics

#endif  // CRSADV_METRICS_H_
