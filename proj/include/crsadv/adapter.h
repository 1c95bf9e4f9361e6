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

#ifndef CRSADV_ADAPTER_H_
#define CRSADV_ADAPTER_H_

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "crsadv/corpus.h"
#include "crsadv/knowledge.h"
#include "crsadv/types.h"
#include "json.hpp"

namespace crsadv::adapter {

inline constexpr int kDefaultKMax = 50;
inline constexpr std::chrono::milliseconds kDefaultTimeout{30000};

struct ContextTurn {
  Speaker speaker = Speaker::kSeeker;
  std::string text;

  friend bool operator==(const ContextTurn&, const ContextTurn&) = default;
};

// R = CRS(C, A): the context without the answer turn, plus the answer.
struct RecommendRequest {
  std::string instance_id;
  std::vector<ContextTurn> context;
  std::string answer;
  int k_max = kDefaultKMax;

  friend bool operator==(const RecommendRequest&,
                         const RecommendRequest&) = default;
};

struct Ranking {
  std::string instance_id;
  std::vector<ItemId> items;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

// Every turn of the instance context except the answer turn, each cut to
// the utterance limit, with `answer` (A or A') truncated the same way.
RecommendRequest MakeRequest(const corpus::EvalInstance& instance,
                             std::string_view answer, int k_max = kDefaultKMax);

// Wire format, one object per line:
//   request  {"id", "context": [{"speaker", "text"}], "answer", "k"}
//   response {"id", "items": [...]}
nlohmann::json ToJson(const RecommendRequest& request);
RecommendRequest RequestFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const Ranking& ranking);
// Throws AdapterError on malformed input. Numeric ids are accepted.
Ranking ParseResponse(std::string_view body);

// Throws AdapterError when the id differs from the request, an item repeats,
// the list is longer than k_max, or (with `catalog`) an item is unknown.
void ValidateRanking(const Ranking& ranking, const RecommendRequest& request,
                     const std::unordered_set<ItemId>* catalog = nullptr);

class Recommender {
 public:
  virtual ~Recommender() = default;
  // Returns a validated ranking or throws AdapterError.
  virtual Ranking Recommend(const RecommendRequest& request) = 0;
};

// Deterministic lexical baseline over a knowledge base. Per item:
//   3 * (distinct title words found in the text)
//   + 1 * (item genres named in the text)
// Items whose genre is named in a dislike clause ("do not like ...",
// "hate ...") are ranked after all others. Ties go to the smaller id.
class BuiltinOverlapRecommender : public Recommender {
 public:
  explicit BuiltinOverlapRecommender(const knowledge::KnowledgeBase& kb);

  Ranking Recommend(const RecommendRequest& request) override;

  struct ItemScore {
    ItemId id;
    int score = 0;
    bool disliked = false;
  };
  // Scores of every KB item, in ranking order.
  std::vector<ItemScore> ScoreAll(const RecommendRequest& request) const;

  // Genres named in clauses that express dislike.
  std::set<std::string> DislikedGenres(std::string_view text) const;

 private:
  const knowledge::KnowledgeBase& kb_;
  std::vector<std::vector<std::string>> title_words_;
};

// Closed-class words and medium nouns (movie, book, ...), ignored when
// matching titles against text.
bool IsTitleStopword(std::string_view word);

// Runs `/bin/sh -c command` and speaks the line protocol over its stdin and
// stdout. The child is started lazily and restarted after it dies or times
// out. Not thread-safe: give every worker its own instance.
class SubprocessRecommender : public Recommender {
 public:
  SubprocessRecommender(std::string command,
                        std::chrono::milliseconds timeout = kDefaultTimeout);
  ~SubprocessRecommender() override;
  SubprocessRecommender(const SubprocessRecommender&) = delete;
  SubprocessRecommender& operator=(const SubprocessRecommender&) = delete;

  Ranking Recommend(const RecommendRequest& request) override;

 private:
  void Start();
  void Stop();
  std::string ReadLine();

  std::string command_;
  std::chrono::milliseconds timeout_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// POSTs the request body to `url` (default path /recommend).
class HttpRecommender : public Recommender {
 public:
  HttpRecommender(std::string url,
                  std::chrono::milliseconds timeout = kDefaultTimeout);

  Ranking Recommend(const RecommendRequest& request) override;

 private:
  std::string origin_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

// "builtin", "cmd:<shell command>" or "http:<url>" / "http://...".
struct AdapterSpec {
  enum class Kind { kBuiltin, kCommand, kHttp };
  Kind kind = Kind::kBuiltin;
  std::string target;

  static AdapterSpec Parse(std::string_view text);  // throws UsageError
  std::string ToString() const;

  friend bool operator==(const AdapterSpec&, const AdapterSpec&) = default;
};

using RecommenderFactory = std::function<std::unique_ptr<Recommender>()>;

// `kb` is required for the builtin adapter and must outlive the factory.
RecommenderFactory MakeFactory(const AdapterSpec& spec,
                               const knowledge::KnowledgeBase* kb,
                               std::chrono::milliseconds timeout = kDefaultTimeout);

}  // namespace crsadv::adapter

#endif  // CRSADV_ADAPTER_H_
