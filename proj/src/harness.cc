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

#include "crsadv/harness.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "crsadv/errors.h"
#include "crsadv/text.h"

namespace crsadv::harness {
namespace {

using nlohmann::json;

std::vector<ItemId> IdsFromJson(const json& j) {
  std::vector<ItemId> ids;
  for (const json& v : j) ids.emplace_back(v.get<std::string>());
  return ids;
}

json IdsToJson(const std::vector<ItemId>& ids) {
  json out = json::array();
  for (const ItemId& id : ids) out.push_back(id.str());
  return out;
}

Outcome RunOne(const Job& job, adapter::Recommender* recommender,
               const std::string& construct_error) {
  Outcome o;
  o.id = job.request.instance_id;
  o.truth = job.truth;
  if (job.skipped) {
    o.skipped = true;
    return o;
  }
  if (!recommender) {
    o.failed = true;
    o.error = construct_error;
    return o;
  }
  try {
    adapter::Ranking ranking = recommender->Recommend(job.request);
    adapter::ValidateRanking(ranking, job.request);
    o.items = std::move(ranking.items);
    o.rank = metrics::BestRank(o.truth, o.items);
  } catch (const std::exception& e) {
    o.failed = true;
    o.error = e.what();
  }
  return o;
}

std::vector<metrics::InstanceScore> ScoresOf(const ScoresFile& file) {
  std::vector<metrics::InstanceScore> scores;
  for (const Outcome& o : file.outcomes) {
    if (o.Scored()) {
      scores.push_back(metrics::Score(o.id, o.truth, o.items, file.header.cutoffs));
    }
  }
  return scores;
}

}  // namespace

std::optional<ItemId> Outcome::Top1() const {
  if (items.empty()) return std::nullopt;
  return items.front();
}

std::vector<Outcome> Run(std::span<const Job> jobs,
                         const adapter::RecommenderFactory& factory, int workers) {
  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    std::unique_ptr<adapter::Recommender> recommender;
    std::string construct_error;
    bool constructed = false;
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      if (!constructed && !jobs[i].skipped) {
        constructed = true;
        try {
          recommender = factory();
        } catch (const std::exception& e) {
          construct_error = e.what();
        }
      }
      outcomes[i] = RunOne(jobs[i], recommender.get(), construct_error);
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(workers, 1)), 1, std::max<std::size_t>(jobs.size(), 1));
  if (n_threads == 1) {
    work();
    return outcomes;
  }
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(work);
  for (std::thread& t : threads) t.join();
  return outcomes;
}

std::vector<Job> OriginalJobs(std::span<const perturb::PerturbedFile> files, int k_max) {
  std::vector<Job> jobs;
  std::unordered_set<std::string> seen;
  for (const perturb::PerturbedFile& file : files) {
    for (const perturb::PerturbedInstance& p : file.instances) {
      if (!seen.insert(p.base.Id()).second) continue;
      jobs.push_back({adapter::MakeRequest(p.base, p.base.answer().text, k_max),
                      p.base.truth, false});
    }
  }
  return jobs;
}

std::vector<Job> AdversarialJobs(const perturb::PerturbedFile& file, int k_max) {
  std::vector<Job> jobs;
  for (const perturb::PerturbedInstance& p : file.instances) {
    jobs.push_back(
        {adapter::MakeRequest(p.base, p.answer_adv, k_max), p.base.truth, p.skipped});
  }
  return jobs;
}

void WriteScores(std::ostream& out, const ScoresFile& file) {
  out << json{{"schema", kScoresSchema},
              {"input", file.header.input},
              {"adapter", file.header.adapter},
              {"cutoffs", file.header.cutoffs},
              {"count", file.outcomes.size()}}
             .dump()
      << '\n';
  for (const Outcome& o : file.outcomes) {
    out << json{{"id", o.id},
                {"truth", IdsToJson(o.truth)},
                {"items", IdsToJson(o.items)},
                {"rank", o.rank ? json(*o.rank) : json(nullptr)},
                {"failed", o.failed},
                {"error", o.failed ? json(o.error) : json(nullptr)},
                {"skipped", o.skipped}}
               .dump()
        << '\n';
  }
}

ScoresFile ReadScores(std::istream& in) {
  ScoresFile file;
  std::string line;
  int line_number = 0;
  bool have_header = false;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("schema", std::string()) != kScoresSchema) {
          throw DataError("not a score file");
        }
        file.header.input = j.at("input").get<std::string>();
        file.header.adapter = j.at("adapter").get<std::string>();
        file.header.cutoffs = j.at("cutoffs").get<std::vector<int>>();
        count = j.at("count").get<std::size_t>();
        have_header = true;
        continue;
      }
      Outcome o;
      o.id = j.at("id").get<std::string>();
      o.truth = IdsFromJson(j.at("truth"));
      o.items = IdsFromJson(j.at("items"));
      if (!j.at("rank").is_null()) o.rank = j["rank"].get<int>();
      o.failed = j.at("failed").get<bool>();
      if (o.failed) o.error = j.at("error").get<std::string>();
      o.skipped = j.at("skipped").get<bool>();
      file.outcomes.push_back(std::move(o));
    } catch (const json::exception& e) {
      throw DataError(std::string("bad score record: ") + e.what(), line_number);
    } catch (const DataError& e) {
      if (e.line()) throw;
      throw DataError(e.what(), line_number);
    }
  }
  if (!have_header) throw DataError("empty score file");
  if (file.outcomes.size() != count) throw DataError("score file is truncated");
  return file;
}

ScoresFile ReadScores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return ReadScores(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void WriteScoresCsv(std::ostream& out, const ScoresFile& file) {
  metrics::WriteScoresCsv(out, ScoresOf(file), file.header.cutoffs);
}

Summary Summarize(std::span<const Outcome> outcomes) {
  Summary s;
  s.total = outcomes.size();
  for (const Outcome& o : outcomes) {
    if (o.failed) ++s.failed;
    if (o.skipped) ++s.skipped;
  }
  return s;
}

report::RobustnessReport CompareScores(const ScoresFile& original,
                                       const ScoresFile& adversarial,
                                       perturb::Scenario scenario,
                                       const report::Thresholds& thresholds) {
  if (original.header.cutoffs != adversarial.header.cutoffs) {
    throw DataError("score files use different cutoffs");
  }
  std::unordered_map<std::string, const Outcome*> orig_by_id;
  for (const Outcome& o : original.outcomes) orig_by_id[o.id] = &o;

  std::vector<report::ScoredInstance> orig_side;
  std::vector<report::ScoredInstance> adv_side;
  std::vector<std::string> missing;
  std::size_t n_failed = 0;
  for (const Outcome& a : adversarial.outcomes) {
    const auto it = orig_by_id.find(a.id);
    if (it == orig_by_id.end()) {
      missing.push_back(a.id);
      continue;
    }
    const Outcome& o = *it->second;
    if (a.skipped) continue;
    if (a.failed || o.failed) {
      ++n_failed;
      continue;
    }
    const auto& cutoffs = original.header.cutoffs;
    orig_side.push_back({metrics::Score(o.id, o.truth, o.items, cutoffs), o.Top1()});
    adv_side.push_back({metrics::Score(a.id, a.truth, a.items, cutoffs), a.Top1()});
  }
  if (!missing.empty()) throw report::UnpairedInstancesError({}, std::move(missing));
  return report::Compare(orig_side, adv_side, scenario, original.header.cutoffs,
                         thresholds, n_failed);
}

metrics::MetricReport OverallOriginal(const ScoresFile& original) {
  return metrics::Aggregate(ScoresOf(original), original.header.cutoffs,
                            Summarize(original.outcomes).failed);
}

}  // namespace crsadv::harness
