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

#include "crsadv/knowledge.h"

#include <algorithm>
#include <fstream>

#include "crsadv/text.h"

namespace crsadv::knowledge {
namespace {

using nlohmann::json;

ItemId IdFromJson(const json& j) {
  if (j.is_string()) return ItemId(j.get<std::string>());
  if (j.is_number_integer()) return ItemId(std::to_string(j.get<long long>()));
  throw DataError("item id must be a string or integer");
}

bool EndsSentence(std::string_view s) {
  s = text::Trim(s);
  return !s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?');
}

}  // namespace

KnowledgeBase KnowledgeBase::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open knowledge base " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return FromJson(doc);
}

KnowledgeBase KnowledgeBase::FromJson(const json& doc) {
  KnowledgeBase kb;
  std::vector<std::string> problems;
  try {
    for (const json& j : doc.at("items")) {
      Item item;
      item.id = IdFromJson(j.at("id"));
      item.title = j.at("title").get<std::string>();
      const auto domain = ParseDomain(j.at("domain").get<std::string>());
      if (!domain) {
        problems.push_back("item " + item.id.str() + ": bad domain");
        continue;
      }
      item.domain = *domain;
      item.genres = j.at("genres").get<std::vector<std::string>>();
      if (item.genres.empty()) {
        problems.push_back("item " + item.id.str() + ": no genres");
      }
      kb.items_.push_back(std::move(item));
    }
    for (const auto& [name, j] : doc.at("genres").items()) {
      Genre genre;
      genre.name = name;
      genre.description = j.at("description").get<std::string>();
      for (const json& m : j.at("members")) genre.members.push_back(IdFromJson(m));
      if (!EndsSentence(genre.description)) {
        problems.push_back("genre " + name +
                           ": description must be one nonempty sentence");
      }
      kb.genres_.emplace(name, std::move(genre));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("knowledge base schema: ") + e.what());
  }

  std::sort(kb.items_.begin(), kb.items_.end(),
            [](const Item& a, const Item& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < kb.items_.size(); ++i) {
    const Item& item = kb.items_[i];
    if (!kb.by_id_.emplace(item.id, i).second) {
      problems.push_back("duplicate item id " + item.id.str());
    }
    kb.by_title_.emplace(text::AsciiLower(item.title), i);
    for (const std::string& g : item.genres) {
      const auto it = kb.genres_.find(g);
      if (it == kb.genres_.end()) {
        problems.push_back("item " + item.id.str() + " lists unknown genre '" +
                           g + "'");
      } else if (std::find(it->second.members.begin(), it->second.members.end(),
                           item.id) == it->second.members.end()) {
        problems.push_back("genre " + g + " does not list member " +
                           item.id.str());
      }
    }
  }
  for (const auto& [name, genre] : kb.genres_) {
    for (const ItemId& m : genre.members) {
      const auto it = kb.by_id_.find(m);
      if (it == kb.by_id_.end()) {
        problems.push_back("genre " + name + " lists unknown member " + m.str());
        continue;
      }
      const auto& gs = kb.items_[it->second].genres;
      if (std::find(gs.begin(), gs.end(), name) == gs.end()) {
        problems.push_back("member " + m.str() + " of genre " + name +
                           " does not list that genre");
      }
    }
  }
  if (!problems.empty()) {
    throw DataError("invalid knowledge base: " + text::Join(problems, "; "));
  }
  return kb;
}

nlohmann::json KnowledgeBase::ToJson() const {
  json items = json::array();
  for (const Item& item : items_) {
    items.push_back({{"id", item.id.str()},
                     {"title", item.title},
                     {"domain", ToString(item.domain)},
                     {"genres", item.genres}});
  }
  json genres = json::object();
  for (const auto& [name, genre] : genres_) {
    json members = json::array();
    for (const ItemId& m : genre.members) members.push_back(m.str());
    genres[name] = {{"description", genre.description}, {"members", members}};
  }
  return {{"items", items}, {"genres", genres}};
}

const Item* KnowledgeBase::FindItem(const ItemId& id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &items_[it->second];
}

const Item& KnowledgeBase::GetItem(const ItemId& id) const {
  const Item* item = FindItem(id);
  if (item == nullptr) throw UnknownItemError(id);
  return *item;
}

const Genre* KnowledgeBase::FindGenre(std::string_view name) const {
  const auto it = genres_.find(std::string(name));
  return it == genres_.end() ? nullptr : &it->second;
}

const Item* KnowledgeBase::FindByTitle(std::string_view title) const {
  const auto it = by_title_.find(text::AsciiLower(text::Trim(title)));
  return it == by_title_.end() ? nullptr : &items_[it->second];
}

const std::string& KnowledgeBase::GenreOf(const ItemId& id) const {
  return GetItem(id).genres.front();
}

const std::string& KnowledgeBase::ContrastGenre(
    const std::set<std::string>& conversation_genres, std::string_view target,
    Rng& rng, std::optional<Domain> domain) const {
  std::vector<const std::string*> eligible;
  for (const auto& [name, genre] : genres_) {
    if (name == target || conversation_genres.count(name) > 0) continue;
    if (domain) {
      const bool has_domain =
          std::any_of(genre.members.begin(), genre.members.end(),
                      [&](const ItemId& m) { return GetItem(m).domain == *domain; });
      if (!has_domain) continue;
    }
    eligible.push_back(&name);
  }
  if (eligible.empty()) throw NoEligibleGenreError();
  return *eligible[rng.Uniform(eligible.size())];
}

const Item& KnowledgeBase::SampleItem(std::string_view genre,
                                      const std::set<ItemId>& exclude, Rng& rng,
                                      std::optional<Domain> domain) const {
  const Genre* g = FindGenre(genre);
  if (g == nullptr) throw EmptyGenreError(std::string(genre));
  std::vector<const Item*> pool;
  for (const ItemId& m : g->members) {
    if (exclude.count(m) > 0) continue;
    const Item& item = GetItem(m);
    if (domain && item.domain != *domain) continue;
    pool.push_back(&item);
  }
  if (pool.empty()) throw EmptyGenreError(g->name);
  return *pool[rng.Uniform(pool.size())];
}

std::set<std::string> KnowledgeBase::GenresMentionedIn(std::string_view text) const {
  std::set<std::string> found;
  for (const auto& [name, genre] : genres_) {
    if (!text::FindWordBounded(text, name).empty()) found.insert(name);
  }
  return found;
}

}  // namespace crsadv::knowledge
