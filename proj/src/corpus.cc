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

#include "crsadv/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "crsadv/errors.h"
#include "crsadv/rng.h"
#include "crsadv/text.h"

namespace crsadv::corpus {
namespace {

using nlohmann::json;

std::string IdString(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw DataError("id must be a string or integer");
}

void AddUnique(std::vector<ItemId>& ids, const ItemId& id) {
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
}

// Truncates the turn text and drops mention spans that no longer fit.
void ApplyTruncation(Turn& turn) {
  turn.text = TruncateUtterance(turn.text);
  std::erase_if(turn.mention_spans,
                [&](const Span& s) { return s.end > turn.text.size(); });
}

std::ifstream OpenOrThrow(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

int LineOfOffset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(),
                                         text.begin() + static_cast<long>(offset),
                                         '\n'));
}

}  // namespace

std::string EvalInstance::Id() const {
  return dialogue_id + ":" + std::to_string(turn_index);
}

LoadResult LoadRedial(const std::filesystem::path& path,
                      const knowledge::KnowledgeBase* kb) {
  std::ifstream in = OpenOrThrow(path);
  return ParseRedial(in, kb);
}

LoadResult ParseRedial(std::istream& in, const knowledge::KnowledgeBase* kb) {
  LoadResult result;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    json conv;
    try {
      conv = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(std::string("malformed JSON: ") + e.what(), line_number);
    }
    auto warn = [&](const std::string& message) {
      result.warnings.push_back("line " + std::to_string(line_number) + ": " +
                                message);
    };
    try {
      Dialogue dialogue;
      dialogue.id = IdString(conv.at("conversationId"));
      dialogue.domain = Domain::kMovie;
      if (!seen_ids.insert(dialogue.id).second) {
        throw DataError("duplicate conversation id " + dialogue.id, line_number);
      }
      const long long initiator = conv.at("initiatorWorkerId").get<long long>();
      const long long respondent = conv.at("respondentWorkerId").get<long long>();
      std::unordered_map<std::string, std::string> titles;
      if (const auto it = conv.find("movieMentions");
          it != conv.end() && it->is_object()) {
        for (const auto& [id, title] : it->items()) {
          if (title.is_string()) {
            titles.emplace(id, std::string(text::Trim(title.get<std::string>())));
          }
        }
      }

      for (const json& message : conv.at("messages")) {
        Turn turn;
        const long long sender = message.at("senderWorkerId").get<long long>();
        if (sender == initiator) {
          turn.speaker = Speaker::kSeeker;
        } else if (sender == respondent) {
          turn.speaker = Speaker::kRecommender;
        } else {
          throw DataError("message sender " + std::to_string(sender) +
                              " is neither initiator nor respondent",
                          line_number);
        }
        const std::string raw = message.at("text").get<std::string>();
        std::size_t i = 0;
        while (i < raw.size()) {
          std::size_t j = i + 1;
          if (raw[i] == '@') {
            while (j < raw.size() && raw[j] >= '0' && raw[j] <= '9') ++j;
          }
          if (raw[i] != '@' || j == i + 1) {
            turn.text.push_back(raw[i]);
            ++i;
            continue;
          }
          const std::string id = raw.substr(i + 1, j - i - 1);
          const ItemId item(id);
          std::string title;
          if (kb != nullptr && kb->FindItem(item) != nullptr) {
            title = kb->FindItem(item)->title;
          } else if (auto t = titles.find(id); t != titles.end()) {
            title = t->second;
          }
          if (title.empty()) {
            warn("conversation " + dialogue.id + ": unknown movie id @" + id +
                 ", mention dropped");
            turn.text.append(raw, i, j - i);
          } else {
            const std::size_t start = turn.text.size();
            turn.text.append(title);
            turn.mention_spans.push_back({start, turn.text.size()});
            AddUnique(turn.mentioned_items, item);
          }
          i = j;
        }
        if (turn.speaker == Speaker::kRecommender) {
          for (const ItemId& item : turn.mentioned_items) {
            if (kb != nullptr && kb->FindItem(item) == nullptr) {
              warn("conversation " + dialogue.id + ": item " + item.str() +
                   " not in knowledge base, dropped from ground truth");
              continue;
            }
            turn.ground_truth.push_back(item);
          }
        }
        ApplyTruncation(turn);
        dialogue.turns.push_back(std::move(turn));
      }
      if (dialogue.turns.empty()) {
        warn("conversation " + dialogue.id + " has no messages, skipped");
        continue;
      }
      result.dialogues.push_back(std::move(dialogue));
    } catch (const json::exception& e) {
      throw DataError(std::string("bad REDIAL record: ") + e.what(), line_number);
    }
  }
  return result;
}

LoadResult LoadOpenDialKg(const std::filesystem::path& path,
                          const knowledge::KnowledgeBase* kb) {
  std::ifstream in = OpenOrThrow(path);
  return ParseOpenDialKg(in, kb);
}

LoadResult ParseOpenDialKg(std::istream& in, const knowledge::KnowledgeBase* kb) {
  const std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  // (record, line) pairs.
  std::vector<std::pair<json, int>> records;
  const std::string_view trimmed = text::Trim(content);
  if (!trimmed.empty() && trimmed.front() == '[') {
    json doc;
    try {
      doc = json::parse(content);
    } catch (const json::parse_error& e) {
      throw DataError(std::string("malformed JSON: ") + e.what(),
                      LineOfOffset(content, e.byte));
    }
    for (json& record : doc) records.emplace_back(std::move(record), 0);
  } else {
    std::istringstream lines(content);
    std::string line;
    int line_number = 0;
    while (std::getline(lines, line)) {
      ++line_number;
      if (text::Trim(line).empty()) continue;
      try {
        records.emplace_back(json::parse(line), line_number);
      } catch (const json::parse_error& e) {
        throw DataError(std::string("malformed JSON: ") + e.what(), line_number);
      }
    }
  }

  LoadResult result;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const json& record = records[r].first;
    const int line_number = records[r].second;
    const std::optional<int> where =
        line_number > 0 ? std::optional<int>(line_number) : std::nullopt;
    const std::string locus = line_number > 0
                                  ? "line " + std::to_string(line_number)
                                  : "dialogue #" + std::to_string(r + 1);
    try {
      if (record.value("task", std::string()) != "recommendation") continue;
      Dialogue dialogue;
      dialogue.id = IdString(record.contains("dialog_id") ? record.at("dialog_id")
                                                          : record.at("id"));
      if (!seen_ids.insert(dialogue.id).second) {
        throw DataError("duplicate dialogue id " + dialogue.id, where);
      }
      const auto domain = ParseDomain(record.at("domain").get<std::string>());
      if (!domain) throw DataError("bad domain in " + dialogue.id, where);
      dialogue.domain = *domain;

      // Entities named by the kg walks are the candidate item mentions.
      std::vector<std::string> candidates;
      auto add_candidate = [&](const std::string& name) {
        if (!name.empty() &&
            std::find(candidates.begin(), candidates.end(), name) == candidates.end()) {
          candidates.push_back(name);
        }
      };
      auto path_triples = [](const json& message) -> const json* {
        const auto meta = message.find("metadata");
        if (meta == message.end() || !meta->contains("path")) return nullptr;
        const json& path = meta->at("path");
        if (!path.is_array() || path.size() < 2 || !path[1].is_array() ||
            path[1].empty()) {
          return nullptr;
        }
        return &path[1];
      };
      for (const json& message : record.at("messages")) {
        if (message.value("type", std::string()) != "action") continue;
        if (const json* triples = path_triples(message)) {
          add_candidate(triples->front().at(0).get<std::string>());
          add_candidate(triples->back().at(2).get<std::string>());
        }
      }
      std::sort(candidates.begin(), candidates.end(),
                [](const std::string& a, const std::string& b) {
                  return a.size() > b.size();
                });

      auto resolve = [&](const std::string& name) -> std::optional<ItemId> {
        if (kb == nullptr) return ItemId(name);
        if (const auto* item = kb->FindByTitle(name)) return item->id;
        return std::nullopt;
      };

      std::vector<ItemId> pending_truth;
      for (const json& message : record.at("messages")) {
        const std::string type = message.value("type", std::string("chat"));
        if (type == "action") {
          if (const json* triples = path_triples(message)) {
            const std::string name = triples->back().at(2).get<std::string>();
            if (auto id = resolve(name)) {
              AddUnique(pending_truth, *id);
            } else {
              result.warnings.push_back(locus + ": dialogue " + dialogue.id +
                                        ": unknown item '" + name +
                                        "', dropped from ground truth");
            }
          }
          continue;
        }
        if (type != "chat") continue;
        Turn turn;
        const std::string sender = message.at("sender").get<std::string>();
        if (sender == "user") {
          turn.speaker = Speaker::kSeeker;
        } else if (sender == "assistant") {
          turn.speaker = Speaker::kRecommender;
        } else {
          throw DataError("unknown sender '" + sender + "'", where);
        }
        turn.text = message.at("message").get<std::string>();
        for (const std::string& name : candidates) {
          const auto id = resolve(name);
          if (!id) continue;
          for (const Span& span : text::FindWordBounded(turn.text, name)) {
            const bool overlaps = std::any_of(
                turn.mention_spans.begin(), turn.mention_spans.end(),
                [&](const Span& s) { return s.Overlaps(span); });
            if (overlaps) continue;
            turn.mention_spans.push_back(span);
            AddUnique(turn.mentioned_items, *id);
          }
        }
        std::sort(turn.mention_spans.begin(), turn.mention_spans.end(),
                  [](const Span& a, const Span& b) { return a.start < b.start; });
        if (turn.speaker == Speaker::kRecommender && !pending_truth.empty()) {
          turn.ground_truth = std::move(pending_truth);
          pending_truth.clear();
        }
        ApplyTruncation(turn);
        dialogue.turns.push_back(std::move(turn));
      }
      if (dialogue.turns.empty()) {
        result.warnings.push_back(locus + ": dialogue " + dialogue.id +
                                  " has no chat messages, skipped");
        continue;
      }
      result.dialogues.push_back(std::move(dialogue));
    } catch (const json::exception& e) {
      throw DataError(std::string("bad OpenDialKG record: ") + e.what(), where);
    }
  }
  return result;
}

std::vector<EvalInstance> ExtractInstances(std::span<const Dialogue> dialogues,
                                           bool last_only) {
  std::vector<EvalInstance> instances;
  for (const Dialogue& d : dialogues) {
    std::vector<EvalInstance> mine;
    std::optional<int> last_seeker;
    for (int i = 0; i < static_cast<int>(d.turns.size()); ++i) {
      const Turn& turn = d.turns[static_cast<std::size_t>(i)];
      if (turn.speaker == Speaker::kRecommender && !turn.ground_truth.empty() &&
          last_seeker) {
        EvalInstance inst;
        inst.dialogue_id = d.id;
        inst.turn_index = i;
        inst.domain = d.domain;
        inst.context.assign(d.turns.begin(), d.turns.begin() + i);
        inst.answer_index = *last_seeker;
        inst.truth = turn.ground_truth;
        mine.push_back(std::move(inst));
      }
      if (turn.speaker == Speaker::kSeeker) last_seeker = i;
    }
    if (last_only && mine.size() > 1) mine.erase(mine.begin(), mine.end() - 1);
    std::move(mine.begin(), mine.end(), std::back_inserter(instances));
  }
  return instances;
}

std::string_view ToString(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValid:
      return "valid";
    case Split::kTest:
      return "test";
  }
  return "train";
}

std::optional<Split> ParseSplit(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "valid") return Split::kValid;
  if (text == "test") return Split::kTest;
  return std::nullopt;
}

SplitCounts ApportionSplits(std::size_t n) {
  constexpr std::size_t kWeights[3] = {8, 1, 1};
  std::size_t counts[3];
  std::size_t remainders[3];
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    counts[i] = n * kWeights[i] / 10;
    remainders[i] = n * kWeights[i] % 10;
    assigned += counts[i];
  }
  int order[3] = {0, 1, 2};
  std::stable_sort(std::begin(order), std::end(order),
                   [&](int a, int b) { return remainders[a] > remainders[b]; });
  for (int k = 0; assigned < n; ++k, ++assigned) ++counts[order[k]];
  return {counts[0], counts[1], counts[2]};
}

SplitAssignment AssignSplits(std::span<const EvalInstance> instances,
                             std::uint64_t seed) {
  const std::set<std::string> unique_ids = [&] {
    std::set<std::string> ids;
    for (const EvalInstance& inst : instances) ids.insert(inst.dialogue_id);
    return ids;
  }();
  std::vector<std::string> order(unique_ids.begin(), unique_ids.end());
  Rng rng(seed);
  rng.Shuffle(order);
  const SplitCounts counts = ApportionSplits(order.size());
  std::unordered_map<std::string, Split> by_dialogue;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Split s = i < counts.train                  ? Split::kTrain
                    : i < counts.train + counts.valid ? Split::kValid
                                                      : Split::kTest;
    by_dialogue.emplace(order[i], s);
  }
  SplitAssignment assignment;
  for (const EvalInstance& inst : instances) {
    assignment.emplace(inst.Id(), by_dialogue.at(inst.dialogue_id));
  }
  return assignment;
}

std::string TruncateUtterance(std::string_view text, std::size_t max_words) {
  const std::vector<Span> words = text::WordSpans(text);
  if (words.size() <= max_words) return std::string(text);
  if (max_words == 0) return std::string();
  return std::string(text.substr(0, words[max_words - 1].end));
}

json ToJson(const Turn& turn) {
  json mentioned = json::array();
  for (const ItemId& id : turn.mentioned_items) mentioned.push_back(id.str());
  json truth = json::array();
  for (const ItemId& id : turn.ground_truth) truth.push_back(id.str());
  json spans = json::array();
  for (const Span& s : turn.mention_spans) spans.push_back({s.start, s.end});
  return {{"speaker", ToString(turn.speaker)},
          {"text", turn.text},
          {"mentioned_items", mentioned},
          {"ground_truth", truth},
          {"mention_spans", spans}};
}

json ToJson(const Dialogue& dialogue) {
  json turns = json::array();
  for (const Turn& t : dialogue.turns) turns.push_back(ToJson(t));
  return {{"id", dialogue.id},
          {"domain", ToString(dialogue.domain)},
          {"turns", turns}};
}

json ToJson(const EvalInstance& instance) {
  json context = json::array();
  for (const Turn& t : instance.context) context.push_back(ToJson(t));
  json truth = json::array();
  for (const ItemId& id : instance.truth) truth.push_back(id.str());
  return {{"id", instance.Id()},
          {"dialogue_id", instance.dialogue_id},
          {"turn_index", instance.turn_index},
          {"domain", ToString(instance.domain)},
          {"context", context},
          {"answer_index", instance.answer_index},
          {"truth", truth}};
}

namespace {

std::vector<ItemId> IdsFromJson(const json& j) {
  std::vector<ItemId> ids;
  for (const json& e : j) ids.emplace_back(IdString(e));
  return ids;
}

}  // namespace

Turn TurnFromJson(const json& j) {
  Turn turn;
  const auto speaker = ParseSpeaker(j.at("speaker").get<std::string>());
  if (!speaker) throw DataError("bad speaker");
  turn.speaker = *speaker;
  turn.text = j.at("text").get<std::string>();
  turn.mentioned_items = IdsFromJson(j.value("mentioned_items", json::array()));
  turn.ground_truth = IdsFromJson(j.value("ground_truth", json::array()));
  for (const json& s : j.value("mention_spans", json::array())) {
    const Span span{s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()};
    if (span.start > span.end || span.end > turn.text.size()) {
      throw DataError("mention span out of range");
    }
    turn.mention_spans.push_back(span);
  }
  return turn;
}

Dialogue DialogueFromJson(const json& j) {
  Dialogue d;
  d.id = IdString(j.at("id"));
  const auto domain = ParseDomain(j.at("domain").get<std::string>());
  if (!domain) throw DataError("bad domain");
  d.domain = *domain;
  for (const json& t : j.at("turns")) d.turns.push_back(TurnFromJson(t));
  if (d.turns.empty()) throw DataError("dialogue " + d.id + " has no turns");
  return d;
}

EvalInstance InstanceFromJson(const json& j) {
  EvalInstance inst;
  inst.dialogue_id = IdString(j.at("dialogue_id"));
  inst.turn_index = j.at("turn_index").get<int>();
  const auto domain = ParseDomain(j.at("domain").get<std::string>());
  if (!domain) throw DataError("bad domain");
  inst.domain = *domain;
  for (const json& t : j.at("context")) inst.context.push_back(TurnFromJson(t));
  inst.answer_index = j.at("answer_index").get<int>();
  inst.truth = IdsFromJson(j.at("truth"));
  if (inst.answer_index < 0 ||
      inst.answer_index >= static_cast<int>(inst.context.size()) ||
      inst.answer().speaker != Speaker::kSeeker) {
    throw DataError("instance " + inst.Id() + ": answer is not a seeker turn");
  }
  if (inst.truth.empty()) throw DataError("instance " + inst.Id() + ": no truth");
  return inst;
}

void WriteCorpus(std::ostream& out, std::span<const Dialogue> dialogues) {
  for (const Dialogue& d : dialogues) out << ToJson(d).dump() << '\n';
}

std::vector<Dialogue> ReadCorpus(std::istream& in) {
  std::vector<Dialogue> dialogues;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    try {
      dialogues.push_back(DialogueFromJson(json::parse(line)));
    } catch (const json::exception& e) {
      throw DataError(std::string("bad corpus record: ") + e.what(), line_number);
    } catch (const DataError& e) {
      throw DataError(e.what(), line_number);
    }
  }
  return dialogues;
}

std::vector<Dialogue> ReadCorpus(const std::filesystem::path& path) {
  std::ifstream in = OpenOrThrow(path);
  return ReadCorpus(in);
}

}  // namespace crsadv::corpus
