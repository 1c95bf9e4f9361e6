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

#include <gtest/gtest.h>

#include <sstream>

#include "crsadv/errors.h"
#include "crsadv/rng.h"
#include "metric_oracle.h"

namespace crsadv::metrics {
namespace {

std::vector<ItemId> Ids(std::initializer_list<const char*> ids) {
  std::vector<ItemId> out;
  for (const char* id : ids) out.emplace_back(id);
  return out;
}

const std::vector<int> kCutoffs(kDefaultCutoffs.begin(), kDefaultCutoffs.end());

TEST(MetricsTest, HandComputedValues) {
  const auto ranking = Ids({"a", "b", "c", "d", "e"});
  const InstanceScore first = Score("x", Ids({"a"}), ranking, kCutoffs);
  EXPECT_EQ(first.rank, 1);
  EXPECT_EQ(first.Get(Metric::kHit, 1), 1.0);
  EXPECT_EQ(first.Get(Metric::kMrr, 1), 1.0);
  EXPECT_EQ(first.Get(Metric::kNdcg, 1), 1.0);

  const InstanceScore fourth = Score("x", Ids({"d"}), ranking, kCutoffs);
  EXPECT_EQ(fourth.rank, 4);
  EXPECT_EQ(fourth.Get(Metric::kHit, 1), 0.0);
  EXPECT_EQ(fourth.Get(Metric::kMrr, 10), 0.25);
  EXPECT_EQ(fourth.Get(Metric::kHit, 10), 1.0);

  const InstanceScore third = Score("x", Ids({"c"}), ranking, kCutoffs);
  EXPECT_DOUBLE_EQ(third.Get(Metric::kNdcg, 10), 0.5);

  const InstanceScore missing = Score("x", Ids({"z"}), ranking, kCutoffs);
  EXPECT_FALSE(missing.rank.has_value());
  for (Metric m : kAllMetrics) EXPECT_EQ(missing.Get(m, 50), 0.0);
}

TEST(MetricsTest, BestRankTakesTheFirstTruthItem) {
  EXPECT_EQ(BestRank(Ids({"c", "b"}), Ids({"a", "b", "c"})), 2);
  EXPECT_FALSE(BestRank(Ids({}), Ids({"a"})).has_value());
  EXPECT_FALSE(BestRank(Ids({"a"}), Ids({})).has_value());
}

TEST(MetricsTest, AggregateAveragesAndHandlesEmptyInput) {
  const auto ranking = Ids({"a", "b"});
  const std::vector<InstanceScore> scores = {Score("1", Ids({"a"}), ranking, kCutoffs),
                                             Score("2", Ids({"z"}), ranking, kCutoffs)};
  const MetricReport r = Aggregate(scores, kCutoffs, 3);
  EXPECT_EQ(r.n_instances, 2u);
  EXPECT_EQ(r.n_failed, 3u);
  EXPECT_EQ(r.Get(Metric::kHit, 50), 0.5);
  EXPECT_EQ(r.Get(Metric::kMrr, 1), 0.5);

  const MetricReport empty = Aggregate({}, kCutoffs);
  EXPECT_EQ(empty.n_instances, 0u);
  for (Metric m : kAllMetrics) {
    for (int k : kCutoffs) EXPECT_FALSE(empty.Get(m, k).has_value());
  }
  EXPECT_EQ(MetricReportFromJson(ToJson(r)), r);
  EXPECT_EQ(MetricReportFromJson(ToJson(empty)), empty);
}

TEST(MetricsTest, MatchesBruteForceOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t pool = 5 + rng.Uniform(80);
    std::vector<ItemId> all;
    for (std::size_t i = 0; i < pool; ++i) all.emplace_back(std::to_string(i));
    rng.Shuffle(all);
    const std::size_t len = std::min<std::size_t>(pool, rng.Uniform(61));
    const std::vector<ItemId> ranking(all.begin(), all.begin() + len);
    std::vector<ItemId> truth;
    const std::size_t n_truth = 1 + rng.Uniform(3);
    for (std::size_t i = 0; i < n_truth; ++i) truth.push_back(all[rng.Uniform(pool)]);

    const InstanceScore s = Score("x", truth, ranking, kCutoffs);
    double prev[3] = {0, 0, 0};
    for (int k : kCutoffs) {
      const testing::OracleValues o = testing::OracleAt(truth, ranking, k);
      EXPECT_NEAR(s.Get(Metric::kHit, k), o.hit, 1e-12);
      EXPECT_NEAR(s.Get(Metric::kMrr, k), o.mrr, 1e-12);
      EXPECT_NEAR(s.Get(Metric::kNdcg, k), o.ndcg, 1e-12);
      int m = 0;
      for (Metric metric : kAllMetrics) {
        EXPECT_GE(s.Get(metric, k), prev[m]);
        prev[m++] = s.Get(metric, k);
      }
    }
    EXPECT_EQ(s.Get(Metric::kHit, 1), s.Get(Metric::kMrr, 1));
    EXPECT_EQ(s.Get(Metric::kHit, 1), s.Get(Metric::kNdcg, 1));
  }
}

TEST(MetricsTest, ParseCutoffs) {
  EXPECT_EQ(ParseCutoffs("50,1,10,10"), (std::vector<int>{1, 10, 50}));
  EXPECT_EQ(ParseCutoffs(" 5 "), (std::vector<int>{5}));
  EXPECT_THROW(ParseCutoffs("0"), UsageError);
  EXPECT_THROW(ParseCutoffs("1,x"), UsageError);
  EXPECT_THROW(ParseCutoffs(""), UsageError);
  EXPECT_THROW(ParseCutoffs("-3"), UsageError);
}

TEST(MetricsTest, ScoresCsv) {
  const auto ranking = Ids({"a", "b"});
  const std::vector<InstanceScore> scores = {Score("1", Ids({"b"}), ranking, kCutoffs),
                                             Score("2", Ids({"z"}), ranking, kCutoffs)};
  std::ostringstream out;
  WriteScoresCsv(out, scores, kCutoffs);
  std::istringstream in(out.str());
  std::string header;
  std::string row1;
  std::string row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  EXPECT_EQ(header,
            "instance_id,rank,hit@1,hit@10,hit@50,mrr@1,mrr@10,mrr@50,ndcg@1,ndcg@10,ndcg@50");
  EXPECT_EQ(row1.substr(0, 18), "1,2,0,1,1,0,0.5,0.");
  EXPECT_EQ(row2, "2,,0,0,0,0,0,0,0,0,0");
}

}  // namespace
}  // namespace crsadv::metrics
