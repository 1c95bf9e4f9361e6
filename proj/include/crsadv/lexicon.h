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

#ifndef CRSADV_LEXICON_H_
#define CRSADV_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crsadv::lexicon {

enum class Pos { kNoun, kVerb, kAdjective, kAdverb };

std::string_view ToString(Pos pos);
std::optional<Pos> ParsePos(std::string_view text);

// One (lemma, pos) sense. Synonym and antonym lists are ordered by
// similarity: index 0 is the preferred replacement.
struct Entry {
  std::string lemma;
  Pos pos = Pos::kNoun;
  std::vector<std::string> synonyms;
  std::vector<std::string> antonyms;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Immutable synonym/antonym store keyed case-insensitively on (lemma, pos).
//
// File format: UTF-8 TSV, one entry per line, columns
//   lemma <TAB> pos <TAB> synonyms <TAB> antonyms
// where list columns are '|'-separated and may be empty or omitted. Lines
// starting with '#' and blank lines are ignored.
class Lexicon {
 public:
  Lexicon() = default;

  // Throws DataError on a bad pos or a duplicate (lemma, pos) row.
  static Lexicon Load(const std::filesystem::path& path);
  static Lexicon Parse(std::istream& in);

  // Canonical form: a version header followed by one row per entry in
  // load order. Save(Parse(Save(x))) == Save(x).
  void Save(std::ostream& out) const;

  const Entry* Find(std::string_view lemma, Pos pos) const;
  bool Contains(std::string_view lemma, Pos pos) const {
    return Find(lemma, pos) != nullptr;
  }
  bool ContainsLemma(std::string_view lemma) const;

  std::optional<std::string> Synonym(std::string_view lemma, Pos pos) const;
  std::optional<std::string> Antonym(std::string_view lemma, Pos pos) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  static constexpr std::string_view kHeader = "# crsadv lexicon v1";

 private:
  void Add(Entry entry, int line);

  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_map<std::string, int> lemma_count_;
};

}  // namespace crsadv::lexicon

#endif  // CRSADV_LEXICON_H_
