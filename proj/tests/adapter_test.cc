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

#include "crsadv/adapter.h"

#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include "httplib.h"
#include "test_paths.h"

namespace crsadv::adapter {
namespace {

using namespace std::chrono_literals;

const knowledge::KnowledgeBase& SmallKb() {
  static const knowledge::KnowledgeBase kb =
      knowledge::KnowledgeBase::Load(testing::TestData("small_kb.json"));
  return kb;
}

RecommendRequest Request(const std::string& answer, const std::string& id = "r1",
                         std::vector<ContextTurn> context = {}) {
  RecommendRequest r;
  r.instance_id = id;
  r.context = std::move(context);
  r.answer = answer;
  r.k_max = 10;
  return r;
}

std::vector<std::string> Ids(const Ranking& r) {
  std::vector<std::string> out;
  for (const ItemId& id : r.items) out.push_back(id.str());
  return out;
}

using Strings = std::vector<std::string>;

TEST(BuiltinTest, HandScoredRankings) {
  BuiltinOverlapRecommender rec(SmallKb());
  // Night Terror: 3 * 2 title words + 1 genre = 7; the rest score 0.
  const auto scores = rec.ScoreAll(Request("I want horror like Night Terror"));
  ASSERT_EQ(scores.size(), 3u);
  EXPECT_EQ(scores[0].id, ItemId("1"));
  EXPECT_EQ(scores[0].score, 7);
  EXPECT_EQ(scores[1].score, 0);
  EXPECT_EQ(Ids(rec.Recommend(Request("I want horror like Night Terror"))),
            (Strings{"1", "2", "3"}));
  // Big Laughs: 1 genre; ties go to the smaller id.
  EXPECT_EQ(Ids(rec.Recommend(Request("Some comedy please"))), (Strings{"3", "1", "2"}));
  // Nothing matches: id order.
  EXPECT_EQ(Ids(rec.Recommend(Request(""))), (Strings{"1", "2", "3"}));
  // Context counts too.
  EXPECT_EQ(Ids(rec.Recommend(Request("anything", "r1", {{Speaker::kSeeker, "big laughs"}}))),
            (Strings{"3", "1", "2"}));
}

TEST(BuiltinTest, DislikedGenresSinkToTheBottom) {
  BuiltinOverlapRecommender rec(SmallKb());
  const auto req = Request("I like comedy. I do not like action genre movies like Road Rage.");
  const auto scores = rec.ScoreAll(req);
  ASSERT_EQ(scores.size(), 3u);
  EXPECT_EQ(scores[0].id, ItemId("3"));
  EXPECT_EQ(scores[2].id, ItemId("2"));
  EXPECT_TRUE(scores[2].disliked);
  EXPECT_EQ(scores[2].score, 7);
  EXPECT_EQ(rec.DislikedGenres("I hate horror, but comedy is fine"),
            (std::set<std::string>{"horror"}));
  EXPECT_EQ(rec.DislikedGenres("I am not looking for action"),
            (std::set<std::string>{"action"}));
  EXPECT_TRUE(rec.DislikedGenres("I like horror and I do not mind action").empty());
  EXPECT_TRUE(IsTitleStopword("the"));
  EXPECT_TRUE(IsTitleStopword("movies"));
  EXPECT_FALSE(IsTitleStopword("terror"));
}

TEST(BuiltinTest, RespectsTheCutoff) {
  BuiltinOverlapRecommender rec(SmallKb());
  auto req = Request("comedy");
  req.k_max = 2;
  EXPECT_EQ(rec.Recommend(req).items.size(), 2u);
}

TEST(RequestTest, MakeRequestDropsTheAnswerTurn) {
  corpus::EvalInstance inst;
  inst.dialogue_id = "d";
  inst.turn_index = 3;
  inst.context = {{Speaker::kSeeker, "hello", {}, {}, {}},
                  {Speaker::kRecommender, "what do you like?", {}, {}, {}},
                  {Speaker::kSeeker, "I like horror", {}, {}, {}}};
  inst.answer_index = 2;
  const RecommendRequest r = MakeRequest(inst, "I hate horror", 5);
  EXPECT_EQ(r.instance_id, "d:3");
  ASSERT_EQ(r.context.size(), 2u);
  EXPECT_EQ(r.context[1].speaker, Speaker::kRecommender);
  EXPECT_EQ(r.answer, "I hate horror");
  EXPECT_EQ(r.k_max, 5);
  EXPECT_EQ(RequestFromJson(ToJson(r)), r);
  EXPECT_EQ(ToJson(r).at("k"), 5);
}

TEST(ResponseTest, ParseAndValidate) {
  const Ranking r = ParseResponse(R"({"id": "r1", "items": ["3", 7]})");
  EXPECT_EQ(Ids(r), (Strings{"3", "7"}));
  EXPECT_THROW(ParseResponse("not json"), AdapterError);
  EXPECT_THROW(ParseResponse(R"({"id": "r1"})"), AdapterError);
  EXPECT_THROW(ParseResponse(R"({"id": "r1", "items": [null]})"), AdapterError);
  EXPECT_THROW(ParseResponse(R"([1, 2])"), AdapterError);

  const auto req = Request("x");
  EXPECT_NO_THROW(ValidateRanking(r, req));
  EXPECT_THROW(ValidateRanking({"other", {ItemId("1")}}, req), AdapterError);
  EXPECT_THROW(ValidateRanking({"r1", {ItemId("1"), ItemId("1")}}, req), AdapterError);
  EXPECT_THROW(ValidateRanking({"r1", std::vector<ItemId>(11, ItemId("1"))}, req),
               AdapterError);
  EXPECT_THROW(ValidateRanking({"r1", {ItemId("")}}, req), AdapterError);
  const std::unordered_set<ItemId> catalog = {ItemId("3")};
  EXPECT_THROW(ValidateRanking(r, req, &catalog), AdapterError);
}

TEST(SpecTest, ParsesEveryForm) {
  EXPECT_EQ(AdapterSpec::Parse("builtin").kind, AdapterSpec::Kind::kBuiltin);
  const AdapterSpec cmd = AdapterSpec::Parse("cmd:\"python3 model.py --fast\"");
  EXPECT_EQ(cmd.kind, AdapterSpec::Kind::kCommand);
  EXPECT_EQ(cmd.target, "python3 model.py --fast");
  EXPECT_EQ(AdapterSpec::Parse("http://localhost:8000/rec").target, "http://localhost:8000/rec");
  EXPECT_EQ(AdapterSpec::Parse("http:http://h:1").target, "http://h:1");
  EXPECT_EQ(AdapterSpec::Parse(cmd.ToString()), cmd);
  EXPECT_THROW(AdapterSpec::Parse("grpc://x"), UsageError);
  EXPECT_THROW(AdapterSpec::Parse("cmd:"), UsageError);
  EXPECT_THROW(MakeFactory(AdapterSpec{}, nullptr), UsageError);
  EXPECT_NE(MakeFactory(AdapterSpec{}, &SmallKb())(), nullptr);
}

TEST(SubprocessTest, SuccessfulExchange) {
  SubprocessRecommender rec(testing::EchoAdapter("ok"), 5000ms);
  EXPECT_EQ(Ids(rec.Recommend(Request("a", "one"))), (Strings{"101", "102", "103"}));
  EXPECT_EQ(Ids(rec.Recommend(Request("b", "two"))), (Strings{"101", "102", "103"}));
}

TEST(SubprocessTest, RejectsDuplicates) {
  SubprocessRecommender rec(testing::EchoAdapter("duplicate"), 5000ms);
  EXPECT_THROW(rec.Recommend(Request("a")), AdapterError);
}

TEST(SubprocessTest, TimesOut) {
  SubprocessRecommender rec(testing::EchoAdapter("hang"), 300ms);
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.Recommend(Request("a"));
    FAIL() << "expected AdapterError";
  } catch (const AdapterError& e) {
    EXPECT_NE(std::string(e.what()).find("timed out"), std::string::npos) << e.what();
  }
  EXPECT_LT(std::chrono::steady_clock::now() - start, 5s);
}

TEST(SubprocessTest, GarbageAndExit) {
  SubprocessRecommender garbage(testing::EchoAdapter("garbage"), 5000ms);
  EXPECT_THROW(garbage.Recommend(Request("a")), AdapterError);
  SubprocessRecommender dead(testing::EchoAdapter("exit"), 5000ms);
  EXPECT_THROW(dead.Recommend(Request("a")), AdapterError);
  SubprocessRecommender missing("/nonexistent/adapter-binary", 5000ms);
  EXPECT_THROW(missing.Recommend(Request("a")), AdapterError);
}

TEST(SubprocessTest, RespawnsAfterAFailure) {
  SubprocessRecommender rec(testing::EchoAdapter("mixed"), 5000ms);
  EXPECT_THROW(rec.Recommend(Request("a", "die-1")), AdapterError);
  EXPECT_EQ(rec.Recommend(Request("a", "fine-2")).items.size(), 3u);
  EXPECT_THROW(rec.Recommend(Request("a", "dup-3")), AdapterError);
  EXPECT_EQ(rec.Recommend(Request("a", "fine-4")).items.size(), 3u);
}

// A local server standing in for a remote model.
class HttpStub {
 public:
  HttpStub() {
    server_.Post("/recommend", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      const std::string id = body.at("id");
      if (id == "boom") {
        res.status = 500;
        return;
      }
      if (id == "slow") std::this_thread::sleep_for(1500ms);
      nlohmann::json items = {"7", "8"};
      if (id == "dup") items = {"7", "7"};
      res.set_content(nlohmann::json{{"id", id}, {"items", items}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~HttpStub() {
    server_.stop();
    thread_.join();
  }
  std::string Url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(HttpTest, ProtocolPaths) {
  HttpStub stub;
  HttpRecommender rec(stub.Url(), 500ms);
  EXPECT_EQ(Ids(rec.Recommend(Request("a", "ok"))), (Strings{"7", "8"}));
  EXPECT_THROW(rec.Recommend(Request("a", "boom")), AdapterError);
  EXPECT_THROW(rec.Recommend(Request("a", "dup")), AdapterError);
  EXPECT_THROW(rec.Recommend(Request("a", "slow")), AdapterError);
  HttpRecommender wrong_path(stub.Url() + "/missing", 500ms);
  EXPECT_THROW(wrong_path.Recommend(Request("a", "ok")), AdapterError);
  EXPECT_THROW(HttpRecommender("ftp://x"), UsageError);
}

}  // namespace
}  // namespace crsadv::adapter
