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

#include <algorithm>
#include <array>

#include "crsadv/errors.h"
#include "crsadv/lingo.h"
#include "crsadv/text.h"
#include "httplib.h"

namespace crsadv::adapter {
namespace {

using nlohmann::json;

// On top of the closed-class table.
constexpr std::array<std::string_view, 7> kTitleStopwords = {
    "book", "books", "film", "films", "movie", "movies", "none"};

constexpr std::array<std::string_view, 9> kPreferenceVerbs = {
    "like", "love", "enjoy", "want", "prefer", "adore", "fancy", "need", "look"};
constexpr std::array<std::string_view, 7> kAversionVerbs = {
    "hate", "dislike", "detest", "loathe", "despise", "avoid", "abhor"};

// Every inflected form of the given verbs.
std::unordered_set<std::string> FormsOf(std::span<const std::string_view> lemmas) {
  std::unordered_set<std::string> forms;
  for (std::string_view lemma : lemmas) {
    for (lingo::Tense t :
         {lingo::Tense::kBase, lingo::Tense::kThirdSingular, lingo::Tense::kPast,
          lingo::Tense::kGerund, lingo::Tense::kPastParticiple}) {
      forms.insert(lingo::Inflect(lemma, t));
    }
  }
  return forms;
}

bool IsNegator(std::string_view word) {
  return word == "not" || word == "never" || word == "no" || word == "cannot" ||
         (word.size() > 3 && word.substr(word.size() - 3) == "n't");
}

// Clauses end at sentence punctuation, commas, semicolons and before
// "but" / "however".
std::vector<std::string> Clauses(std::string_view text) {
  std::vector<std::string> clauses;
  std::string current;
  auto flush = [&] {
    if (!text::Trim(current).empty()) clauses.push_back(current);
    current.clear();
  };
  for (const std::string& line : text::Split(text, '\n')) {
    for (const Span& span : text::WordSpans(line)) {
      std::string_view word = std::string_view(line).substr(span.start, span.size());
      const std::string lower = text::AsciiLower(word);
      if (lower == "but" || lower.rfind("however", 0) == 0) flush();
      std::size_t cut = word.size();
      while (cut > 0 && std::string_view(".,!?;").find(word[cut - 1]) !=
                            std::string_view::npos) {
        --cut;
      }
      current.append(word.substr(0, cut));
      current.push_back(' ');
      if (cut < word.size()) flush();
    }
    flush();
  }
  flush();
  return clauses;
}

std::string JoinedText(const RecommendRequest& request) {
  std::string all;
  for (const ContextTurn& turn : request.context) {
    all += turn.text;
    all += '\n';
  }
  all += request.answer;
  return all;
}

std::string ItemString(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw AdapterError("item ids must be strings or integers");
}

}  // namespace

RecommendRequest MakeRequest(const corpus::EvalInstance& instance,
                             std::string_view answer, int k_max) {
  RecommendRequest r;
  r.instance_id = instance.Id();
  for (std::size_t i = 0; i < instance.context.size(); ++i) {
    if (static_cast<int>(i) == instance.answer_index) continue;
    const corpus::Turn& turn = instance.context[i];
    r.context.push_back({turn.speaker, corpus::TruncateUtterance(turn.text)});
  }
  r.answer = corpus::TruncateUtterance(answer);
  r.k_max = k_max;
  return r;
}

json ToJson(const RecommendRequest& request) {
  json context = json::array();
  for (const ContextTurn& turn : request.context) {
    context.push_back({{"speaker", crsadv::ToString(turn.speaker)}, {"text", turn.text}});
  }
  return {{"id", request.instance_id},
          {"context", context},
          {"answer", request.answer},
          {"k", request.k_max}};
}

RecommendRequest RequestFromJson(const json& j) {
  RecommendRequest r;
  try {
    r.instance_id = j.at("id").get<std::string>();
    for (const json& turn : j.at("context")) {
      const auto speaker = ParseSpeaker(turn.at("speaker").get<std::string>());
      if (!speaker) throw DataError("bad speaker in request");
      r.context.push_back({*speaker, turn.at("text").get<std::string>()});
    }
    r.answer = j.at("answer").get<std::string>();
    r.k_max = j.at("k").get<int>();
  } catch (const json::exception& e) {
    throw DataError(std::string("bad request: ") + e.what());
  }
  return r;
}

json ToJson(const Ranking& ranking) {
  json items = json::array();
  for (const ItemId& id : ranking.items) items.push_back(id.str());
  return {{"id", ranking.instance_id}, {"items", items}};
}

Ranking ParseResponse(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error&) {
    std::string shown(body.substr(0, 80));
    throw AdapterError("response is not JSON: '" + shown + "'");
  }
  if (!j.is_object() || !j.contains("id") || !j.contains("items") ||
      !j["id"].is_string() || !j["items"].is_array()) {
    throw AdapterError("response needs a string 'id' and an 'items' array");
  }
  Ranking r;
  r.instance_id = j["id"].get<std::string>();
  for (const json& v : j["items"]) r.items.emplace_back(ItemString(v));
  return r;
}

void ValidateRanking(const Ranking& ranking, const RecommendRequest& request,
                     const std::unordered_set<ItemId>* catalog) {
  if (ranking.instance_id != request.instance_id) {
    throw AdapterError("response id '" + ranking.instance_id +
                       "' does not match request '" + request.instance_id + "'");
  }
  if (static_cast<int>(ranking.items.size()) > request.k_max) {
    throw AdapterError("ranking has " + std::to_string(ranking.items.size()) +
                       " items, more than k=" + std::to_string(request.k_max));
  }
  std::unordered_set<ItemId> seen;
  for (const ItemId& id : ranking.items) {
    if (id.empty()) throw AdapterError("empty item id in ranking");
    if (!seen.insert(id).second) {
      throw AdapterError("duplicate item '" + id.str() + "' in ranking");
    }
    if (catalog && !catalog->count(id)) {
      throw AdapterError("item '" + id.str() + "' is not in the catalog");
    }
  }
}

bool IsTitleStopword(std::string_view word) {
  return lingo::ClosedClassTag(word).has_value() ||
         std::find(kTitleStopwords.begin(), kTitleStopwords.end(), word) !=
             kTitleStopwords.end();
}

BuiltinOverlapRecommender::BuiltinOverlapRecommender(
    const knowledge::KnowledgeBase& kb)
    : kb_(kb) {
  for (const knowledge::Item& item : kb_.items()) {
    std::vector<std::string> words;
    for (std::string& w : text::NormalizedWords(item.title)) {
      if (IsTitleStopword(w)) continue;
      if (std::find(words.begin(), words.end(), w) == words.end()) {
        words.push_back(std::move(w));
      }
    }
    title_words_.push_back(std::move(words));
  }
}

std::set<std::string> BuiltinOverlapRecommender::DislikedGenres(
    std::string_view text) const {
  static const std::unordered_set<std::string> preference = FormsOf(kPreferenceVerbs);
  static const std::unordered_set<std::string> aversion = FormsOf(kAversionVerbs);
  std::set<std::string> disliked;
  for (const std::string& clause : Clauses(text)) {
    bool negated = false;
    bool dislike = false;
    for (const std::string& w : text::NormalizedWords(clause)) {
      if (IsNegator(w)) negated = true;
      if (aversion.count(w) || (negated && preference.count(w))) dislike = true;
    }
    if (!dislike) continue;
    const std::set<std::string> named = kb_.GenresMentionedIn(clause);
    disliked.insert(named.begin(), named.end());
  }
  return disliked;
}

std::vector<BuiltinOverlapRecommender::ItemScore> BuiltinOverlapRecommender::ScoreAll(
    const RecommendRequest& request) const {
  const std::string all = JoinedText(request);
  const std::vector<std::string> words = text::NormalizedWords(all);
  const std::unordered_set<std::string> present(words.begin(), words.end());
  const std::set<std::string> named = kb_.GenresMentionedIn(all);
  const std::set<std::string> disliked = DislikedGenres(all);

  std::vector<ItemScore> scores;
  const auto& items = kb_.items();
  for (std::size_t i = 0; i < items.size(); ++i) {
    ItemScore s{items[i].id, 0, false};
    for (const std::string& w : title_words_[i]) {
      if (present.count(w)) s.score += 3;
    }
    for (const std::string& g : items[i].genres) {
      if (named.count(g)) s.score += 1;
      if (disliked.count(g)) s.disliked = true;
    }
    scores.push_back(std::move(s));
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const ItemScore& a, const ItemScore& b) {
                     if (a.disliked != b.disliked) return !a.disliked;
                     if (a.score != b.score) return a.score > b.score;
                     return a.id < b.id;
                   });
  return scores;
}

Ranking BuiltinOverlapRecommender::Recommend(const RecommendRequest& request) {
  Ranking r;
  r.instance_id = request.instance_id;
  for (const ItemScore& s : ScoreAll(request)) {
    if (static_cast<int>(r.items.size()) >= request.k_max) break;
    r.items.push_back(s.id);
  }
  return r;
}

HttpRecommender::HttpRecommender(std::string url, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  const std::size_t scheme = url.find("://");
  if (scheme == std::string::npos || url.substr(0, scheme) != "http") {
    throw UsageError("http adapter needs an http:// URL, got '" + url + "'");
  }
  const std::size_t slash = url.find('/', scheme + 3);
  origin_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
  if (path_ == "/") path_ = "/recommend";
  if (origin_.size() <= scheme + 3) throw UsageError("http adapter URL has no host");
}

Ranking HttpRecommender::Recommend(const RecommendRequest& request) {
  httplib::Client client(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  const auto result = client.Post(path_, ToJson(request).dump(), "application/json");
  if (!result) {
    throw AdapterError("http request to " + origin_ + path_ +
                       " failed: " + httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    throw AdapterError("http status " + std::to_string(result->status) + " from " +
                       origin_ + path_);
  }
  Ranking ranking = ParseResponse(result->body);
  ValidateRanking(ranking, request);
  return ranking;
}

AdapterSpec AdapterSpec::Parse(std::string_view text) {
  AdapterSpec spec;
  if (text == "builtin") return spec;
  if (text.rfind("cmd:", 0) == 0) {
    spec.kind = Kind::kCommand;
    spec.target = std::string(text::Trim(text.substr(4)));
    if (spec.target.size() >= 2 && spec.target.front() == '"' &&
        spec.target.back() == '"') {
      spec.target = spec.target.substr(1, spec.target.size() - 2);
    }
    if (spec.target.empty()) throw UsageError("cmd: adapter needs a command");
    return spec;
  }
  if (text.rfind("http://", 0) == 0) {
    spec.kind = Kind::kHttp;
    spec.target = std::string(text);
    return spec;
  }
  if (text.rfind("http:", 0) == 0) {
    spec.kind = Kind::kHttp;
    spec.target = std::string(text.substr(5));
    if (spec.target.rfind("http://", 0) != 0) throw UsageError("bad http adapter URL");
    return spec;
  }
  throw UsageError("unknown adapter '" + std::string(text) +
                   "' (expected builtin, cmd:<command> or http:<url>)");
}

std::string AdapterSpec::ToString() const {
  switch (kind) {
    case Kind::kBuiltin:
      return "builtin";
    case Kind::kCommand:
      return "cmd:" + target;
    case Kind::kHttp:
      return "http:" + target;
  }
  return "builtin";
}

RecommenderFactory MakeFactory(const AdapterSpec& spec,
                               const knowledge::KnowledgeBase* kb,
                               std::chrono::milliseconds timeout) {
  switch (spec.kind) {
    case AdapterSpec::Kind::kBuiltin:
      if (kb == nullptr) throw UsageError("builtin adapter needs a knowledge base");
      return [kb] { return std::make_unique<BuiltinOverlapRecommender>(*kb); };
    case AdapterSpec::Kind::kCommand:
      return [command = spec.target, timeout] {
        return std::make_unique<SubprocessRecommender>(command, timeout);
      };
    case AdapterSpec::Kind::kHttp: {
      HttpRecommender probe(spec.target, timeout);  // validates the URL early
      return [url = spec.target, timeout] {
        return std::make_unique<HttpRecommender>(url, timeout);
      };
    }
  }
  throw UsageError("unknown adapter kind");
}

}  // namespace crsadv::adapter
