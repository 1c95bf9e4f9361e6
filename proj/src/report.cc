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

#include "crsadv/report.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace crsadv::report {
namespace {

using metrics::kAllMetrics;
using metrics::Metric;
using nlohmann::json;

std::size_t Idx(Metric m) { return static_cast<std::size_t>(m); }

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Cell(const std::optional<double>& v) { return v ? Fixed(*v, 4) : "-"; }

std::string PercentCell(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::string s = Fixed(*v * 100.0, 1);
  if (*v >= 0) s.insert(s.begin(), '+');
  return s + "%";
}

std::string ListOrNone(const std::vector<std::string>& values) {
  if (values.empty()) return "none";
  std::string out;
  for (const std::string& v : values) out += (out.empty() ? "" : ", ") + v;
  return out;
}

std::string MissingList(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < 10; ++i) {
    out += (i ? ", " : "") + ids[i];
  }
  if (ids.size() > 10) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out.empty() ? "-" : out;
}

std::string MetricHeader(const std::vector<int>& cutoffs) {
  std::string header;
  for (Metric m : kAllMetrics) {
    for (int k : cutoffs) header += " " + std::string(ToString(m)) + "@" + std::to_string(k) + " |";
  }
  return header;
}

}  // namespace

UnpairedInstancesError::UnpairedInstancesError(
    std::vector<std::string> only_original, std::vector<std::string> only_adversarial)
    : Error(ErrorKind::kData,
            "unpaired instances; only in original: " + MissingList(only_original) +
                "; only in adversarial: " + MissingList(only_adversarial)),
      only_original_(std::move(only_original)),
      only_adversarial_(std::move(only_adversarial)) {}

std::optional<double> RobustnessReport::Delta(Metric metric, int k) const {
  const auto it = std::find(original.cutoffs.begin(), original.cutoffs.end(), k);
  if (it == original.cutoffs.end()) return std::nullopt;
  return delta[Idx(metric)][static_cast<std::size_t>(it - original.cutoffs.begin())];
}

std::optional<double> RelativeDelta(std::optional<double> orig,
                                    std::optional<double> adv) {
  if (!orig || !adv || *orig == 0.0) return std::nullopt;
  return (*adv - *orig) / *orig;
}

RobustnessReport CompareReports(const metrics::MetricReport& original,
                                const metrics::MetricReport& adversarial,
                                perturb::Scenario scenario, double shift_rate,
                                std::size_t n_paired, const Thresholds& thresholds) {
  if (original.cutoffs != adversarial.cutoffs) {
    throw DataError("original and adversarial reports use different cutoffs");
  }
  RobustnessReport r;
  r.scenario = scenario;
  r.expectation = perturb::ExpectationOf(scenario);
  r.original = original;
  r.adversarial = adversarial;
  r.shift_rate = shift_rate;
  r.n_paired = n_paired;
  r.thresholds = thresholds;
  bool dropped = false;
  for (Metric m : kAllMetrics) {
    for (std::size_t c = 0; c < original.cutoffs.size(); ++c) {
      const auto d =
          RelativeDelta(original.means[Idx(m)][c], adversarial.means[Idx(m)][c]);
      if (d && *d < -thresholds.cat1_tolerance) dropped = true;
      r.delta[Idx(m)].push_back(d);
    }
  }
  if (perturb::IsCat1(scenario)) {
    if (dropped) r.verdicts.emplace_back(kFooledByCat1);
  } else if (shift_rate < thresholds.cat2_shift) {
    r.verdicts.emplace_back(kInsensitiveToCat2);
  }
  return r;
}

RobustnessReport Compare(std::span<const ScoredInstance> original,
                         std::span<const ScoredInstance> adversarial,
                         perturb::Scenario scenario, std::span<const int> cutoffs,
                         const Thresholds& thresholds, std::size_t n_failed) {
  std::map<std::string, const ScoredInstance*> adv_by_id;
  for (const ScoredInstance& s : adversarial) adv_by_id[s.score.instance_id] = &s;
  std::vector<std::string> only_original;
  std::vector<std::string> only_adversarial;
  std::map<std::string, bool> seen;
  std::vector<metrics::InstanceScore> orig_scores;
  std::vector<metrics::InstanceScore> adv_scores;
  std::size_t shifted = 0;
  for (const ScoredInstance& o : original) {
    seen[o.score.instance_id] = true;
    const auto it = adv_by_id.find(o.score.instance_id);
    if (it == adv_by_id.end()) {
      only_original.push_back(o.score.instance_id);
      continue;
    }
    orig_scores.push_back(o.score);
    adv_scores.push_back(it->second->score);
    if (o.top1 != it->second->top1) ++shifted;
  }
  for (const ScoredInstance& a : adversarial) {
    if (!seen.count(a.score.instance_id)) only_adversarial.push_back(a.score.instance_id);
  }
  if (!only_original.empty() || !only_adversarial.empty()) {
    throw UnpairedInstancesError(std::move(only_original), std::move(only_adversarial));
  }
  const double shift_rate =
      orig_scores.empty() ? 0.0
                          : static_cast<double>(shifted) / static_cast<double>(orig_scores.size());
  return CompareReports(metrics::Aggregate(orig_scores, cutoffs, n_failed),
                        metrics::Aggregate(adv_scores, cutoffs, n_failed), scenario,
                        shift_rate, orig_scores.size(), thresholds);
}

std::optional<Format> ParseFormat(std::string_view text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  if (text == "md" || text == "markdown") return Format::kMarkdown;
  return std::nullopt;
}

json ToJson(const RobustnessReport& r) {
  json delta = json::object();
  for (Metric m : kAllMetrics) {
    for (std::size_t c = 0; c < r.original.cutoffs.size(); ++c) {
      const auto& d = r.delta[Idx(m)][c];
      delta[std::string(ToString(m)) + "@" + std::to_string(r.original.cutoffs[c])] =
          d ? json(*d) : json(nullptr);
    }
  }
  return {{"scenario", perturb::ToString(r.scenario)},
          {"expectation", perturb::ToString(r.expectation)},
          {"n_paired", r.n_paired},
          {"original", metrics::ToJson(r.original)},
          {"adversarial", metrics::ToJson(r.adversarial)},
          {"delta", delta},
          {"shift_rate", r.shift_rate},
          {"verdicts", r.verdicts},
          {"thresholds",
           {{"cat1_tolerance", r.thresholds.cat1_tolerance},
            {"cat2_shift", r.thresholds.cat2_shift}}}};
}

RobustnessReport RobustnessReportFromJson(const json& j) {
  RobustnessReport r;
  try {
    const auto scenario = perturb::ParseScenario(j.at("scenario").get<std::string>());
    const auto expectation =
        perturb::ParseExpectation(j.at("expectation").get<std::string>());
    if (!scenario || !expectation) throw DataError("bad scenario in report");
    r.scenario = *scenario;
    r.expectation = *expectation;
    r.n_paired = j.at("n_paired").get<std::size_t>();
    r.original = metrics::MetricReportFromJson(j.at("original"));
    r.adversarial = metrics::MetricReportFromJson(j.at("adversarial"));
    const json& delta = j.at("delta");
    for (Metric m : kAllMetrics) {
      for (int k : r.original.cutoffs) {
        const json& v = delta.at(std::string(ToString(m)) + "@" + std::to_string(k));
        r.delta[Idx(m)].push_back(v.is_null() ? std::nullopt
                                              : std::optional<double>(v.get<double>()));
      }
    }
    r.shift_rate = j.at("shift_rate").get<double>();
    r.verdicts = j.at("verdicts").get<std::vector<std::string>>();
    r.thresholds.cat1_tolerance = j.at("thresholds").at("cat1_tolerance").get<double>();
    r.thresholds.cat2_shift = j.at("thresholds").at("cat2_shift").get<double>();
  } catch (const json::exception& e) {
    throw DataError(std::string("bad report: ") + e.what());
  }
  return r;
}

json ToJson(const ReportBundle& bundle) {
  json reports = json::array();
  for (const RobustnessReport& r : bundle.reports) reports.push_back(ToJson(r));
  return {{"schema", "crsadv.report/1"},
          {"adapter", bundle.adapter},
          {"overall_original", metrics::ToJson(bundle.overall_original)},
          {"reports", reports}};
}

ReportBundle BundleFromJson(const json& j) {
  ReportBundle b;
  try {
    if (j.value("schema", std::string()) != "crsadv.report/1") {
      throw DataError("not a report file");
    }
    b.adapter = j.at("adapter").get<std::string>();
    b.overall_original = metrics::MetricReportFromJson(j.at("overall_original"));
    for (const json& r : j.at("reports")) b.reports.push_back(RobustnessReportFromJson(r));
  } catch (const json::exception& e) {
    throw DataError(std::string("bad report: ") + e.what());
  }
  return b;
}

std::string Render(const ReportBundle& bundle, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::kJson:
      out << ToJson(bundle).dump(2) << '\n';
      break;
    case Format::kCsv: {
      out << "scenario,metric,cutoff,original,adversarial,delta,shift_rate,n_paired\n";
      for (const RobustnessReport& r : bundle.reports) {
        for (Metric m : kAllMetrics) {
          for (std::size_t c = 0; c < r.original.cutoffs.size(); ++c) {
            const auto& o = r.original.means[Idx(m)][c];
            const auto& a = r.adversarial.means[Idx(m)][c];
            const auto& d = r.delta[Idx(m)][c];
            out << perturb::ToString(r.scenario) << ',' << ToString(m) << ','
                << r.original.cutoffs[c] << ',' << (o ? json(*o).dump() : "") << ','
                << (a ? json(*a).dump() : "") << ',' << (d ? json(*d).dump() : "")
                << ',' << json(r.shift_rate).dump() << ',' << r.n_paired << '\n';
          }
        }
      }
      break;
    }
    case Format::kMarkdown: {
      const std::vector<int>& cutoffs = bundle.overall_original.cutoffs;
      const std::size_t columns = kAllMetrics.size() * cutoffs.size();
      for (int category = 1; category <= 2; ++category) {
        std::vector<const RobustnessReport*> rows;
        for (const RobustnessReport& r : bundle.reports) {
          if (perturb::IsCat1(r.scenario) == (category == 1)) rows.push_back(&r);
        }
        if (rows.empty()) continue;
        out << "### Cat" << category << " ("
            << perturb::ToString(perturb::ExpectationOf(rows.front()->scenario))
            << ")\n\n";
        out << "| Model | Input Type |" << MetricHeader(cutoffs) << '\n';
        out << "|---|---|";
        for (std::size_t i = 0; i < columns; ++i) out << "---|";
        out << '\n';
        out << "| " << bundle.adapter << " | Original |";
        for (Metric m : kAllMetrics) {
          for (std::size_t c = 0; c < cutoffs.size(); ++c) {
            out << ' ' << Cell(bundle.overall_original.means[Idx(m)][c]) << " |";
          }
        }
        out << '\n';
        for (const RobustnessReport* r : rows) {
          out << "|  | " << perturb::DisplayName(r->scenario) << " |";
          for (Metric m : kAllMetrics) {
            for (std::size_t c = 0; c < cutoffs.size(); ++c) {
              out << ' ' << Cell(r->adversarial.means[Idx(m)][c]) << " |";
            }
          }
          out << '\n';
        }
        out << "\nRelative change against the paired original:\n\n";
        out << "| Input Type | n | shift rate | verdicts |" << MetricHeader(cutoffs) << '\n';
        out << "|---|---|---|---|";
        for (std::size_t i = 0; i < columns; ++i) out << "---|";
        out << '\n';
        for (const RobustnessReport* r : rows) {
          out << "| " << perturb::DisplayName(r->scenario) << " | " << r->n_paired
              << " | " << Fixed(r->shift_rate, 4) << " | " << ListOrNone(r->verdicts)
              << " |";
          for (Metric m : kAllMetrics) {
            for (std::size_t c = 0; c < cutoffs.size(); ++c) {
              out << ' ' << PercentCell(r->delta[Idx(m)][c]) << " |";
            }
          }
          out << '\n';
        }
        out << '\n';
      }
      break;
    }
  }
  return out.str();
}

}  // namespace crsadv::report
