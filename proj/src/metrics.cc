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

#include "crsadv/metrics.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "crsadv/errors.h"
#include "crsadv/text.h"

namespace crsadv::metrics {
namespace {

std::size_t CutoffIndex(const std::vector<int>& cutoffs, int k) {
  const auto it = std::find(cutoffs.begin(), cutoffs.end(), k);
  if (it == cutoffs.end()) {
    throw UsageError("cutoff " + std::to_string(k) + " was not scored");
  }
  return static_cast<std::size_t>(it - cutoffs.begin());
}

std::string FormatDouble(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view ToString(Metric metric) {
  switch (metric) {
    case Metric::kHit:
      return "hit";
    case Metric::kMrr:
      return "mrr";
    case Metric::kNdcg:
      return "ndcg";
  }
  return "hit";
}

std::optional<Metric> ParseMetric(std::string_view text) {
  for (Metric m : kAllMetrics) {
    if (ToString(m) == text) return m;
  }
  return std::nullopt;
}

double HitAt(std::optional<int> rank, int k) {
  return rank && *rank <= k ? 1.0 : 0.0;
}

double MrrAt(std::optional<int> rank, int k) {
  return rank && *rank <= k ? 1.0 / *rank : 0.0;
}

double NdcgAt(std::optional<int> rank, int k) {
  return rank && *rank <= k ? 1.0 / std::log2(*rank + 1.0) : 0.0;
}

double Value(Metric metric, std::optional<int> rank, int k) {
  switch (metric) {
    case Metric::kHit:
      return HitAt(rank, k);
    case Metric::kMrr:
      return MrrAt(rank, k);
    case Metric::kNdcg:
      return NdcgAt(rank, k);
  }
  return 0.0;
}

std::optional<int> BestRank(std::span<const ItemId> truth,
                            std::span<const ItemId> ranking) {
  const std::unordered_set<ItemId> wanted(truth.begin(), truth.end());
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (wanted.count(ranking[i])) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

double InstanceScore::Get(Metric metric, int k) const {
  return values[static_cast<std::size_t>(metric)][CutoffIndex(cutoffs, k)];
}

InstanceScore Score(std::string instance_id, std::span<const ItemId> truth,
                    std::span<const ItemId> ranking, std::span<const int> cutoffs) {
  InstanceScore s;
  s.instance_id = std::move(instance_id);
  s.rank = BestRank(truth, ranking);
  s.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  for (Metric m : kAllMetrics) {
    auto& row = s.values[static_cast<std::size_t>(m)];
    for (int k : cutoffs) row.push_back(Value(m, s.rank, k));
  }
  return s;
}

std::optional<double> MetricReport::Get(Metric metric, int k) const {
  return means[static_cast<std::size_t>(metric)][CutoffIndex(cutoffs, k)];
}

MetricReport Aggregate(std::span<const InstanceScore> scores,
                       std::span<const int> cutoffs, std::size_t n_failed) {
  MetricReport r;
  r.n_instances = scores.size();
  r.n_failed = n_failed;
  r.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  for (Metric m : kAllMetrics) {
    auto& row = r.means[static_cast<std::size_t>(m)];
    for (int k : cutoffs) {
      if (scores.empty()) {
        row.push_back(std::nullopt);
        continue;
      }
      // Recomputed from the rank so that score cutoffs need not match.
      double sum = 0.0;
      for (const InstanceScore& s : scores) sum += Value(m, s.rank, k);
      row.push_back(sum / static_cast<double>(scores.size()));
    }
  }
  return r;
}

nlohmann::json ToJson(const MetricReport& report) {
  nlohmann::json means = nlohmann::json::object();
  for (Metric m : kAllMetrics) {
    for (std::size_t c = 0; c < report.cutoffs.size(); ++c) {
      const auto& v = report.means[static_cast<std::size_t>(m)][c];
      means[std::string(ToString(m)) + "@" + std::to_string(report.cutoffs[c])] =
          v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    }
  }
  return {{"n_instances", report.n_instances},
          {"n_failed", report.n_failed},
          {"cutoffs", report.cutoffs},
          {"means", means}};
}

MetricReport MetricReportFromJson(const nlohmann::json& j) {
  MetricReport r;
  try {
    r.n_instances = j.at("n_instances").get<std::size_t>();
    r.n_failed = j.at("n_failed").get<std::size_t>();
    r.cutoffs = j.at("cutoffs").get<std::vector<int>>();
    const auto& means = j.at("means");
    for (Metric m : kAllMetrics) {
      for (int k : r.cutoffs) {
        const auto& v = means.at(std::string(ToString(m)) + "@" + std::to_string(k));
        r.means[static_cast<std::size_t>(m)].push_back(
            v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad metric report: ") + e.what());
  }
  return r;
}

void WriteScoresCsv(std::ostream& out, std::span<const InstanceScore> scores,
                    std::span<const int> cutoffs) {
  out << "instance_id,rank";
  for (Metric m : kAllMetrics) {
    for (int k : cutoffs) out << ',' << ToString(m) << '@' << k;
  }
  out << '\n';
  for (const InstanceScore& s : scores) {
    out << s.instance_id << ',';
    if (s.rank) out << *s.rank;
    for (Metric m : kAllMetrics) {
      for (int k : cutoffs) out << ',' << FormatDouble(Value(m, s.rank, k));
    }
    out << '\n';
  }
}

std::vector<int> ParseCutoffs(std::string_view text) {
  std::vector<int> cutoffs;
  for (const std::string& part : text::Split(text, ',')) {
    const std::string_view p = text::Trim(part);
    int k = 0;
    const auto res = std::from_chars(p.data(), p.data() + p.size(), k);
    if (p.empty() || res.ec != std::errc() || res.ptr != p.data() + p.size() ||
        k <= 0) {
      throw UsageError("bad cutoff '" + std::string(p) + "'");
    }
    cutoffs.push_back(k);
  }
  if (cutoffs.empty()) throw UsageError("no cutoffs given");
  std::sort(cutoffs.begin(), cutoffs.end());
  cutoffs.erase(std::unique(cutoffs.begin(), cutoffs.end()), cutoffs.end());
  return cutoffs;
}

}  // namespace crsadv::metrics
