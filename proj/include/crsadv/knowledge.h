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

#ifndef CRSADV_KNOWLEDGE_H_
#define CRSADV_KNOWLEDGE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crsadv/errors.h"
#include "crsadv/rng.h"
#include "crsadv/types.h"
#include "json.hpp"

namespace crsadv::knowledge {

struct Item {
  ItemId id;
  std::string title;
  Domain domain = Domain::kMovie;
  // Nonempty; the first entry is the primary genre.
  std::vector<std::string> genres;
};

struct Genre {
  std::string name;
  // One sentence, ending in . ! or ?
  std::string description;
  std::vector<ItemId> members;
};

class UnknownItemError : public Error {
 public:
  explicit UnknownItemError(const ItemId& id)
      : Error(ErrorKind::kData, "unknown item '" + id.str() + "'") {}
};

class NoEligibleGenreError : public Error {
 public:
  NoEligibleGenreError()
      : Error(ErrorKind::kData, "no genre left outside the conversation") {}
};

class EmptyGenreError : public Error {
 public:
  explicit EmptyGenreError(const std::string& genre)
      : Error(ErrorKind::kData, "genre '" + genre + "' has no eligible item") {}
};

// Offline item knowledge: genres per item, a description sentence per
// genre, and genre membership. Immutable after load.
//
// JSON schema:
//   {"items": [{"id", "title", "domain": "movie"|"book", "genres": [...]}],
//    "genres": {"<name>": {"description": "...", "members": [...]}}}
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  // Validates cross references; throws DataError listing every offender.
  static KnowledgeBase Load(const std::filesystem::path& path);
  static KnowledgeBase FromJson(const nlohmann::json& doc);
  nlohmann::json ToJson() const;

  const Item* FindItem(const ItemId& id) const;
  const Item& GetItem(const ItemId& id) const;  // throws UnknownItemError
  const Genre* FindGenre(std::string_view name) const;
  // Case-insensitive exact title match.
  const Item* FindByTitle(std::string_view title) const;

  // Primary (first listed) genre. Throws UnknownItemError.
  const std::string& GenreOf(const ItemId& id) const;

  // Uniform draw over genres not in `conversation_genres` and not `target`.
  // With `domain`, only genres holding at least one item of that domain are
  // eligible. Throws NoEligibleGenreError.
  const std::string& ContrastGenre(const std::set<std::string>& conversation_genres,
                                   std::string_view target, Rng& rng,
                                   std::optional<Domain> domain = {}) const;

  // Uniform draw over the genre's members minus `exclude`, optionally
  // restricted to one domain. Throws EmptyGenreError.
  const Item& SampleItem(std::string_view genre, const std::set<ItemId>& exclude,
                         Rng& rng, std::optional<Domain> domain = {}) const;

  // Genre names occurring as whole words in `text`.
  std::set<std::string> GenresMentionedIn(std::string_view text) const;

  // Sorted by id.
  const std::vector<Item>& items() const { return items_; }
  // Sorted by name.
  const std::map<std::string, Genre>& genres() const { return genres_; }

 private:
  std::vector<Item> items_;
  std::unordered_map<ItemId, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> by_title_;
  std::map<std::string, Genre> genres_;
};

}  // namespace crsadv::knowledge

#endif  // CRSADV_KNOWLEDGE_H_
