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

#include "crsadv/lexicon.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "crsadv/errors.h"
#include "crsadv/text.h"

namespace crsadv::lexicon {
namespace {

std::string Key(std::string_view lemma, Pos pos) {
  std::string key = text::AsciiLower(lemma);
  key.push_back('\t');
  key.append(ToString(pos));
  return key;
}

// Splits a '|' list, trimming items and dropping empties, duplicates and the
// lemma itself. Order of first occurrence is kept.
std::vector<std::string> ParseList(std::string_view field,
                                   const std::string& lemma) {
  std::vector<std::string> out;
  if (text::Trim(field).empty()) return out;
  for (const std::string& raw : text::Split(field, '|')) {
    std::string item = text::AsciiLower(text::Trim(raw));
    if (item.empty() || item == lemma) continue;
    if (std::find(out.begin(), out.end(), item) != out.end()) continue;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

std::string_view ToString(Pos pos) {
  switch (pos) {
    case Pos::kNoun:
      return "noun";
    case Pos::kVerb:
      return "verb";
    case Pos::kAdjective:
      return "adjective";
    case Pos::kAdverb:
      return "adverb";
  }
  return "noun";
}

std::optional<Pos> ParsePos(std::string_view text) {
  if (text == "noun") return Pos::kNoun;
  if (text == "verb") return Pos::kVerb;
  if (text == "adjective") return Pos::kAdjective;
  if (text == "adverb") return Pos::kAdverb;
  return std::nullopt;
}

Lexicon Lexicon::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon " + path.string());
  return Parse(in);
}

Lexicon Lexicon::Parse(std::istream& in) {
  Lexicon lexicon;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::Trim(line).empty() || line.front() == '#') continue;
    const std::vector<std::string> cols = text::Split(line, '\t');
    if (cols.size() < 2 || cols.size() > 4) {
      throw DataError("expected 2-4 tab-separated columns", line_number);
    }
    Entry entry;
    entry.lemma = text::AsciiLower(text::Trim(cols[0]));
    if (entry.lemma.empty()) throw DataError("empty lemma", line_number);
    const auto pos = ParsePos(text::Trim(cols[1]));
    if (!pos) {
      throw DataError("bad pos '" + cols[1] + "'", line_number);
    }
    entry.pos = *pos;
    if (cols.size() > 2) entry.synonyms = ParseList(cols[2], entry.lemma);
    if (cols.size() > 3) entry.antonyms = ParseList(cols[3], entry.lemma);
    lexicon.Add(std::move(entry), line_number);
  }
  return lexicon;
}

void Lexicon::Add(Entry entry, int line) {
  std::string key = Key(entry.lemma, entry.pos);
  if (index_.count(key) > 0) {
    throw DataError("duplicate entry (" + entry.lemma + ", " +
                        std::string(ToString(entry.pos)) + ")",
                    line);
  }
  index_.emplace(std::move(key), entries_.size());
  ++lemma_count_[entry.lemma];
  entries_.push_back(std::move(entry));
}

void Lexicon::Save(std::ostream& out) const {
  out << kHeader << '\n';
  for (const Entry& e : entries_) {
    out << e.lemma << '\t' << ToString(e.pos) << '\t'
        << text::Join(e.synonyms, "|") << '\t' << text::Join(e.antonyms, "|")
        << '\n';
  }
}

const Entry* Lexicon::Find(std::string_view lemma, Pos pos) const {
  const auto it = index_.find(Key(lemma, pos));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

bool Lexicon::ContainsLemma(std::string_view lemma) const {
  return lemma_count_.count(text::AsciiLower(lemma)) > 0;
}

std::optional<std::string> Lexicon::Synonym(std::string_view lemma,
                                            Pos pos) const {
  const Entry* e = Find(lemma, pos);
  if (e == nullptr || e->synonyms.empty()) return std::nullopt;
  return e->synonyms.front();
}

std::optional<std::string> Lexicon::Antonym(std::string_view lemma,
                                            Pos pos) const {
  const Entry* e = Find(lemma, pos);
  if (e == nullptr || e->antonyms.empty()) return std::nullopt;
  return e->antonyms.front();
}

}  // namespace crsadv::lexicon
