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

#ifndef CRSADV_CORPUS_H_
#define CRSADV_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsadv/knowledge.h"
#include "crsadv/types.h"
#include "json.hpp"

namespace crsadv::corpus {

inline constexpr std::size_t kMaxUtteranceWords = 256;

struct Turn {
  Speaker speaker = Speaker::kSeeker;
  std::string text;
  std::vector<ItemId> mentioned_items;
  // Nonempty only on recommender turns that make a recommendation.
  std::vector<ItemId> ground_truth;
  // Where mentioned titles sit in `text`; tokens inside are protected.
  std::vector<Span> mention_spans;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Dialogue {
  std::string id;
  Domain domain = Domain::kMovie;
  std::vector<Turn> turns;

  friend bool operator==(const Dialogue&, const Dialogue&) = default;
};

// One recommendation point: predict `truth` from `context` (every turn
// before `turn_index`), whose latest seeker turn is the answer.
struct EvalInstance {
  std::string dialogue_id;
  int turn_index = 0;
  Domain domain = Domain::kMovie;
  std::vector<Turn> context;
  int answer_index = 0;
  std::vector<ItemId> truth;

  const Turn& answer() const { return context.at(answer_index); }
  std::string Id() const;

  friend bool operator==(const EvalInstance&, const EvalInstance&) = default;
};

struct LoadResult {
  std::vector<Dialogue> dialogues;
  std::vector<std::string> warnings;
};

// REDIAL JSON-lines export: one conversation per line with `messages`,
// `movieMentions`, initiator/respondent worker ids and `@<id>` markers.
// Markers are replaced by the title; ground truth of a recommender turn is
// the set of items it mentions. With `kb`, items unknown to the KB are
// dropped from ground truth with a warning.
LoadResult LoadRedial(const std::filesystem::path& path,
                      const knowledge::KnowledgeBase* kb = nullptr);
LoadResult ParseRedial(std::istream& in,
                       const knowledge::KnowledgeBase* kb = nullptr);

// OpenDialKG export: a JSON array or JSON-lines of dialogues
//   {"dialog_id", "task": "recommendation"|"chit-chat",
//    "domain": "movie"|"book",
//    "messages": [{"sender": "user"|"assistant", "type": "chat",
//                  "message": "..."} |
//                 {"sender", "type": "action", "action_id",
//                  "metadata": {"path": [score, [[s, r, o], ...], text]}}]}
// Only recommendation dialogues are kept. The object of the final triple
// in a kg path is the ground truth of the next assistant chat turn.
LoadResult LoadOpenDialKg(const std::filesystem::path& path,
                          const knowledge::KnowledgeBase* kb = nullptr);
LoadResult ParseOpenDialKg(std::istream& in,
                           const knowledge::KnowledgeBase* kb = nullptr);

// One instance per recommender turn with ground truth and an earlier seeker
// turn. With `last_only`, just the final such turn of each dialogue.
std::vector<EvalInstance> ExtractInstances(std::span<const Dialogue> dialogues,
                                           bool last_only = false);

enum class Split { kTrain, kValid, kTest };
std::string_view ToString(Split split);
std::optional<Split> ParseSplit(std::string_view text);

// instance id -> split. Grouped by dialogue, 8:1:1 over the sorted set of
// dialogue ids shuffled by `seed`, rounded by largest remainder.
using SplitAssignment = std::map<std::string, Split>;
SplitAssignment AssignSplits(std::span<const EvalInstance> instances,
                             std::uint64_t seed);

// Dialogue-count apportionment used by AssignSplits.
struct SplitCounts {
  std::size_t train = 0;
  std::size_t valid = 0;
  std::size_t test = 0;
};
SplitCounts ApportionSplits(std::size_t n_dialogues);

// First `max_words` whitespace-delimited words. Text within the limit is
// returned unchanged; otherwise it is cut right after the last kept word.
std::string TruncateUtterance(std::string_view text,
                              std::size_t max_words = kMaxUtteranceWords);

// Normalized corpus: JSON-lines, one Dialogue per line with schema
// {id, domain, turns: [{speaker, text, mentioned_items, ground_truth,
// mention_spans}]}.
inline constexpr std::string_view kCorpusSchema = "crsadv.corpus/1";
nlohmann::json ToJson(const Turn& turn);
nlohmann::json ToJson(const Dialogue& dialogue);
nlohmann::json ToJson(const EvalInstance& instance);
Turn TurnFromJson(const nlohmann::json& j);
Dialogue DialogueFromJson(const nlohmann::json& j);
EvalInstance InstanceFromJson(const nlohmann::json& j);

void WriteCorpus(std::ostream& out, std::span<const Dialogue> dialogues);
std::vector<Dialogue> ReadCorpus(std::istream& in);
std::vector<Dialogue> ReadCorpus(const std::filesystem::path& path);

}  // namespace crsadv::corpus

#endif  // CRSADV_CORPUS_H_
