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

#include "crsadv/lingo.h"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "crsadv/text.h"

namespace crsadv::lingo {

namespace internal {
extern const std::string_view kIrregularVerbsTsv;
extern const std::string_view kClosedClassTsv;
}  // namespace internal

namespace {

using lexicon::Lexicon;
using lexicon::Pos;

constexpr std::string_view kPunctuation = ".,!?";

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool IsConsonant(char c) { return c >= 'a' && c <= 'z' && !IsVowel(c); }

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool HasVowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return IsVowel(c) || c == 'y'; });
}

int VowelGroups(std::string_view s) {
  int groups = 0;
  bool in_group = false;
  for (char c : s) {
    const bool v = IsVowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

// stop -> stopp-, plan -> plann-; monosyllables ending consonant-vowel-
// consonant, excluding w/x/y.
bool DoublesFinalConsonant(std::string_view w) {
  if (w.size() < 3) return false;
  const char last = w[w.size() - 1];
  return IsConsonant(last) && last != 'w' && last != 'x' && last != 'y' &&
         IsVowel(w[w.size() - 2]) && IsConsonant(w[w.size() - 3]) &&
         VowelGroups(w) == 1;
}

// Lowercase with typographic apostrophes folded to ASCII.
std::string LookupKey(std::string_view surface) {
  std::string out;
  out.reserve(surface.size());
  for (std::size_t i = 0; i < surface.size(); ++i) {
    if (surface.compare(i, 3, "\xE2\x80\x99") == 0) {
      out.push_back('\'');
      i += 2;
      continue;
    }
    const char c = surface[i];
    out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  return out;
}

std::vector<std::vector<std::string>> ParseTsv(std::string_view tsv) {
  std::vector<std::vector<std::string>> rows;
  for (const std::string& line : text::Split(tsv, '\n')) {
    const std::string_view trimmed = text::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    rows.push_back(text::Split(trimmed, '\t'));
  }
  return rows;
}

struct Tables {
  std::vector<VerbForms> irregular;
  std::unordered_map<std::string, std::size_t> irregular_by_lemma;
  // Inflected form -> (lemma index, tense); first registration wins.
  std::unordered_map<std::string, std::pair<std::size_t, Tense>>
      irregular_forms;
  std::unordered_map<std::string, PosTag> closed_class;
};

const Tables& GetTables() {
  static const Tables tables = [] {
    Tables t;
    for (const auto& row : ParseTsv(internal::kIrregularVerbsTsv)) {
      if (row.size() != 5) continue;
      t.irregular_by_lemma.emplace(row[0], t.irregular.size());
      t.irregular.push_back({row[0], row[1], row[2], row[3], row[4]});
    }
    // Priority when one surface form serves several tenses.
    constexpr std::array<Tense, 4> kOrder = {
        Tense::kThirdSingular, Tense::kPast, Tense::kPastParticiple,
        Tense::kGerund};
    for (Tense tense : kOrder) {
      for (std::size_t i = 0; i < t.irregular.size(); ++i) {
        const std::string& form = t.irregular[i].Get(tense);
        if (form == t.irregular[i].lemma) continue;
        t.irregular_forms.emplace(form, std::make_pair(i, tense));
      }
    }
    for (const auto& row : ParseTsv(internal::kClosedClassTsv)) {
      if (row.size() < 2) continue;
      PosTag tag;
      tag.category = ParseCategory(row[1]).value_or(Category::kOther);
      if (row.size() > 2) tag.tense = ParseTense(row[2]);
      t.closed_class.emplace(row[0], tag);
    }
    return t;
  }();
  return tables;
}

const std::unordered_map<std::string, std::string>& IrregularPlurals() {
  static const std::unordered_map<std::string, std::string> plurals = {
      {"man", "men"},       {"woman", "women"},   {"child", "children"},
      {"person", "people"}, {"mouse", "mice"},    {"foot", "feet"},
      {"tooth", "teeth"},   {"life", "lives"},    {"wife", "wives"},
      {"knife", "knives"},  {"wolf", "wolves"},   {"shelf", "shelves"},
      {"series", "series"}, {"species", "species"}, {"sheep", "sheep"},
      {"fish", "fish"},
  };
  return plurals;
}

const std::unordered_set<std::string>& Determiners() {
  static const std::unordered_set<std::string> words = {
      "the",  "a",     "an",    "my",    "your",  "his",     "her",
      "its",  "our",   "their", "these", "those", "some",    "any",
      "no",   "every", "each",  "another", "other", "more", "most",
      "all",  "many",  "few",   "several", "one",  "two",  "three"};
  return words;
}

// Words after which "like" is a preposition rather than a verb.
const std::unordered_set<std::string>& LikePrepositionHosts() {
  static const std::unordered_set<std::string> words = {
      "something", "anything", "nothing", "everything", "one", "ones",
      "just",      "more",     "much",    "exactly"};
  return words;
}

struct Analysis {
  Category category;
  std::optional<Tense> tense;
  std::string lemma;
  bool plural = false;
  bool inflected = false;
};

Category FromPos(Pos pos) {
  switch (pos) {
    case Pos::kNoun:
      return Category::kNoun;
    case Pos::kVerb:
      return Category::kVerb;
    case Pos::kAdjective:
      return Category::kAdjective;
    case Pos::kAdverb:
      return Category::kAdverb;
  }
  return Category::kNoun;
}

std::vector<std::string> VerbLemmaCandidates(const std::string& w,
                                             Tense tense) {
  std::vector<std::string> out;
  auto strip = [&](std::size_t n) { return w.substr(0, w.size() - n); };
  switch (tense) {
    case Tense::kThirdSingular:
      if (EndsWith(w, "ies")) out.push_back(strip(3) + "y");
      if (EndsWith(w, "es")) out.push_back(strip(2));
      if (EndsWith(w, "s")) out.push_back(strip(1));
      break;
    case Tense::kPast:
    case Tense::kPastParticiple:
      if (EndsWith(w, "ied")) out.push_back(strip(3) + "y");
      if (EndsWith(w, "ed")) {
        out.push_back(strip(2));
        out.push_back(strip(1));
        if (w.size() >= 5 && w[w.size() - 3] == w[w.size() - 4]) {
          out.push_back(strip(3));
        }
      }
      break;
    case Tense::kGerund:
      if (EndsWith(w, "ying")) out.push_back(strip(4) + "ie");
      if (EndsWith(w, "ing")) {
        out.push_back(strip(3));
        out.push_back(strip(3) + "e");
        if (w.size() >= 6 && w[w.size() - 4] == w[w.size() - 5]) {
          out.push_back(strip(4));
        }
      }
      break;
    case Tense::kBase:
      break;
  }
  return out;
}

std::vector<std::string> NounLemmaCandidates(const std::string& w) {
  std::vector<std::string> out;
  for (const auto& [singular, plural] : IrregularPlurals()) {
    if (plural == w && singular != w) out.push_back(singular);
  }
  if (EndsWith(w, "ies")) out.push_back(w.substr(0, w.size() - 3) + "y");
  if (EndsWith(w, "es")) out.push_back(w.substr(0, w.size() - 2));
  if (EndsWith(w, "s")) out.push_back(w.substr(0, w.size() - 1));
  return out;
}

std::vector<Analysis> Analyze(const std::string& w, const Lexicon& lexicon) {
  const Tables& tables = GetTables();
  std::vector<Analysis> out;
  auto add = [&out](Analysis a) {
    for (const Analysis& b : out) {
      if (b.category == a.category && b.tense == a.tense && b.lemma == a.lemma)
        return;
    }
    out.push_back(std::move(a));
  };

  const bool irregular_lemma = tables.irregular_by_lemma.count(w) > 0;
  if (irregular_lemma) add({Category::kVerb, Tense::kBase, w});
  if (auto it = tables.irregular_forms.find(w);
      it != tables.irregular_forms.end()) {
    add({Category::kVerb, it->second.second,
         tables.irregular[it->second.first].lemma, false, true});
  }
  for (Pos pos : {Pos::kVerb, Pos::kNoun, Pos::kAdjective, Pos::kAdverb}) {
    if (!lexicon.Contains(w, pos)) continue;
    Analysis a{FromPos(pos), std::nullopt, w};
    if (pos == Pos::kVerb) a.tense = Tense::kBase;
    add(std::move(a));
  }
  for (Tense tense : {Tense::kThirdSingular, Tense::kPast, Tense::kGerund}) {
    for (const std::string& lemma : VerbLemmaCandidates(w, tense)) {
      if (lemma.empty()) continue;
      const bool known = lexicon.Contains(lemma, Pos::kVerb) ||
                         tables.irregular_by_lemma.count(lemma) > 0;
      if (known && Inflect(lemma, tense) == w) {
        add({Category::kVerb, tense, lemma, false, true});
        break;
      }
    }
  }
  for (const std::string& lemma : NounLemmaCandidates(w)) {
    if (!lemma.empty() && lexicon.Contains(lemma, Pos::kNoun) &&
        Pluralize(lemma) == w) {
      add({Category::kNoun, std::nullopt, lemma, true, true});
      break;
    }
  }
  return out;
}

Analysis SuffixRules(const std::string& w) {
  if (EndsWith(w, "ing") && w.size() > 4 && HasVowel(w.substr(0, w.size() - 3))) {
    std::string stem = w.substr(0, w.size() - 3);
    if (stem.size() >= 3 && stem.back() == stem[stem.size() - 2] &&
        IsConsonant(stem.back())) {
      stem.pop_back();
    }
    return {Category::kVerb, Tense::kGerund, stem, false, true};
  }
  if (EndsWith(w, "ed") && w.size() > 3 && HasVowel(w.substr(0, w.size() - 2))) {
    std::string stem = w.substr(0, w.size() - 2);
    if (EndsWith(w, "ied")) stem = w.substr(0, w.size() - 3) + "y";
    return {Category::kVerb, Tense::kPast, stem, false, true};
  }
  if (EndsWith(w, "ly") && w.size() > 3) {
    return {Category::kAdverb, std::nullopt, w};
  }
  Analysis noun{Category::kNoun, std::nullopt, w};
  if (w.size() > 3 && EndsWith(w, "s") && !EndsWith(w, "ss") &&
      !EndsWith(w, "us") && !EndsWith(w, "is") && w.find('\'') == std::string::npos) {
    noun.plural = true;
    noun.lemma = w.substr(0, w.size() - 1);
  }
  return noun;
}

enum class Context { kNominal, kVerbal, kNeutral };

Context ContextAt(const std::vector<Token>& tokens, std::size_t i) {
  if (i == 0 || tokens[i - 1].IsPunctuation()) return Context::kVerbal;
  const Token& prev = tokens[i - 1];
  const std::string key = LookupKey(prev.surface);
  if (Determiners().count(key) > 0 ||
      prev.tag.category == Category::kAdjective) {
    return Context::kNominal;
  }
  switch (prev.tag.category) {
    case Category::kPronoun:
    case Category::kAuxiliary:
    case Category::kAdverb:
      return Context::kVerbal;
    default:
      break;
  }
  if (key == "to") return Context::kVerbal;
  return Context::kNeutral;
}

int Rank(const Analysis& a, Context context) {
  const bool verb = a.category == Category::kVerb;
  switch (context) {
    case Context::kNominal:
      if (a.category == Category::kNoun) return 0;
      if (a.category == Category::kAdjective) return 1;
      return verb ? 2 : 3;
    case Context::kVerbal:
      if (verb) return 0;
      if (a.category == Category::kAdjective) return 1;
      return a.category == Category::kNoun ? 2 : 3;
    case Context::kNeutral:
      if (verb && a.inflected) return 0;
      if (a.category == Category::kNoun) return 1;
      if (verb) return 2;
      return a.category == Category::kAdjective ? 3 : 4;
  }
  return 5;
}

bool IsPunctuationSurface(std::string_view s) {
  return s.size() == 1 && kPunctuation.find(s[0]) != std::string_view::npos;
}

}  // namespace

std::string_view ToString(Category category) {
  switch (category) {
    case Category::kNoun:
      return "noun";
    case Category::kVerb:
      return "verb";
    case Category::kAuxiliary:
      return "auxiliary";
    case Category::kAdjective:
      return "adjective";
    case Category::kAdverb:
      return "adverb";
    case Category::kPronoun:
      return "pronoun";
    case Category::kOther:
      return "other";
  }
  return "other";
}

std::string_view ToString(Tense tense) {
  switch (tense) {
    case Tense::kBase:
      return "base";
    case Tense::kThirdSingular:
      return "third_singular";
    case Tense::kPast:
      return "past";
    case Tense::kGerund:
      return "gerund";
    case Tense::kPastParticiple:
      return "past_participle";
  }
  return "base";
}

std::optional<Category> ParseCategory(std::string_view text) {
  for (Category c : {Category::kNoun, Category::kVerb, Category::kAuxiliary,
                     Category::kAdjective, Category::kAdverb,
                     Category::kPronoun, Category::kOther}) {
    if (ToString(c) == text) return c;
  }
  return std::nullopt;
}

std::optional<Tense> ParseTense(std::string_view text) {
  for (Tense t : {Tense::kBase, Tense::kThirdSingular, Tense::kPast,
                  Tense::kGerund, Tense::kPastParticiple}) {
    if (ToString(t) == text) return t;
  }
  return std::nullopt;
}

std::string_view ToString(EditKind kind) {
  switch (kind) {
    case EditKind::kSynonym:
      return "synonym";
    case EditKind::kAntonym:
      return "antonym";
    case EditKind::kNegation:
      return "negation";
    case EditKind::kAppend:
      return "append";
  }
  return "synonym";
}

std::optional<EditKind> ParseEditKind(std::string_view text) {
  for (EditKind k : {EditKind::kSynonym, EditKind::kAntonym,
                     EditKind::kNegation, EditKind::kAppend}) {
    if (ToString(k) == text) return k;
  }
  return std::nullopt;
}

bool Token::IsPunctuation() const { return IsPunctuationSurface(surface); }

const std::string& VerbForms::Get(Tense tense) const {
  switch (tense) {
    case Tense::kBase:
      return lemma;
    case Tense::kThirdSingular:
      return third_singular;
    case Tense::kPast:
      return past;
    case Tense::kGerund:
      return gerund;
    case Tense::kPastParticiple:
      return past_participle;
  }
  return lemma;
}

const std::vector<VerbForms>& IrregularVerbs() { return GetTables().irregular; }

const VerbForms* FindIrregular(std::string_view lemma) {
  const Tables& t = GetTables();
  const auto it = t.irregular_by_lemma.find(LookupKey(lemma));
  return it == t.irregular_by_lemma.end() ? nullptr : &t.irregular[it->second];
}

std::optional<PosTag> ClosedClassTag(std::string_view word) {
  const Tables& t = GetTables();
  const auto it = t.closed_class.find(LookupKey(word));
  if (it == t.closed_class.end()) return std::nullopt;
  return it->second;
}

std::vector<Token> Tokenize(std::string_view text,
                            std::span<const Span> protected_spans) {
  std::vector<Token> tokens;
  for (const Span& word : text::WordSpans(text)) {
    std::size_t end = word.end;
    while (end > word.start &&
           kPunctuation.find(text[end - 1]) != std::string_view::npos) {
      --end;
    }
    if (end > word.start) {
      Token token;
      token.surface = std::string(text.substr(word.start, end - word.start));
      token.span = {word.start, end};
      tokens.push_back(std::move(token));
    }
    for (std::size_t p = end; p < word.end; ++p) {
      Token token;
      token.surface = std::string(1, text[p]);
      token.span = {p, p + 1};
      tokens.push_back(std::move(token));
    }
  }
  for (Token& token : tokens) {
    token.is_protected = std::any_of(
        protected_spans.begin(), protected_spans.end(),
        [&](const Span& s) { return s.Overlaps(token.span); });
  }
  return tokens;
}

std::vector<Token> Tag(std::vector<Token> tokens, const Lexicon& lexicon) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& token = tokens[i];
    const std::string w = LookupKey(token.surface);
    token.lemma = w;
    token.plural = false;
    if (token.IsPunctuation()) {
      token.tag = {Category::kOther, std::nullopt};
      continue;
    }
    if (token.is_protected) {
      token.tag = {Category::kNoun, std::nullopt};
      continue;
    }
    if (auto closed = ClosedClassTag(w)) {
      token.tag = *closed;
      continue;
    }
    if (w == "like" && i > 0 &&
        (tokens[i - 1].tag.category == Category::kNoun ||
         tokens[i - 1].tag.category == Category::kAdjective ||
         LikePrepositionHosts().count(LookupKey(tokens[i - 1].surface)) > 0)) {
      token.tag = {Category::kOther, std::nullopt};
      continue;
    }
    std::vector<Analysis> analyses = Analyze(w, lexicon);
    Analysis chosen;
    if (analyses.empty()) {
      chosen = SuffixRules(w);
    } else {
      const Context context = ContextAt(tokens, i);
      chosen = *std::min_element(
          analyses.begin(), analyses.end(),
          [context](const Analysis& a, const Analysis& b) {
            return Rank(a, context) < Rank(b, context);
          });
    }
    token.tag = {chosen.category, chosen.tense};
    token.lemma = chosen.lemma;
    token.plural = chosen.plural;
  }
  return tokens;
}

std::optional<std::size_t> MainVerb(std::span<const Token> tokens) {
  std::optional<std::size_t> first_aux;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_protected) continue;
    if (tokens[i].tag.category == Category::kVerb) return i;
    if (tokens[i].tag.category == Category::kAuxiliary && !first_aux) {
      first_aux = i;
    }
  }
  return first_aux;
}

std::string Inflect(std::string_view lemma, Tense tense) {
  const std::size_t space = lemma.find(' ');
  if (space != std::string_view::npos) {
    return Inflect(lemma.substr(0, space), tense) +
           std::string(lemma.substr(space));
  }
  const std::string w = LookupKey(lemma);
  if (tense == Tense::kBase || w.empty()) return w;
  if (const VerbForms* forms = FindIrregular(w)) return forms->Get(tense);

  const char last = w.back();
  const bool consonant_y =
      last == 'y' && w.size() >= 2 && IsConsonant(w[w.size() - 2]);
  switch (tense) {
    case Tense::kThirdSingular:
      if (consonant_y) return w.substr(0, w.size() - 1) + "ies";
      if (EndsWith(w, "s") || EndsWith(w, "x") || EndsWith(w, "z") ||
          EndsWith(w, "ch") || EndsWith(w, "sh") || EndsWith(w, "o")) {
        return w + "es";
      }
      return w + "s";
    case Tense::kPast:
    case Tense::kPastParticiple:
      if (last == 'e') return w + "d";
      if (consonant_y) return w.substr(0, w.size() - 1) + "ied";
      if (DoublesFinalConsonant(w)) return w + last + "ed";
      return w + "ed";
    case Tense::kGerund:
      if (EndsWith(w, "ie")) return w.substr(0, w.size() - 2) + "ying";
      if (last == 'e' && !EndsWith(w, "ee") && !EndsWith(w, "ye") &&
          !EndsWith(w, "oe") && w.size() > 2) {
        return w.substr(0, w.size() - 1) + "ing";
      }
      if (DoublesFinalConsonant(w)) return w + last + "ing";
      return w + "ing";
    case Tense::kBase:
      break;
  }
  return w;
}

std::string Pluralize(std::string_view noun) {
  const std::size_t space = noun.rfind(' ');
  if (space != std::string_view::npos) {
    return std::string(noun.substr(0, space + 1)) +
           Pluralize(noun.substr(space + 1));
  }
  const std::string w = LookupKey(noun);
  if (w.empty()) return w;
  if (auto it = IrregularPlurals().find(w); it != IrregularPlurals().end()) {
    return it->second;
  }
  if (EndsWith(w, "s") || EndsWith(w, "x") || EndsWith(w, "z") ||
      EndsWith(w, "ch") || EndsWith(w, "sh")) {
    return w + "es";
  }
  if (w.size() >= 2 && w.back() == 'y' && IsConsonant(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ies";
  }
  return w + "s";
}

std::string MatchCase(std::string_view model, std::string replacement) {
  if (!model.empty() && !replacement.empty() && model[0] >= 'A' &&
      model[0] <= 'Z' && replacement[0] >= 'a' && replacement[0] <= 'z') {
    replacement[0] = static_cast<char>(replacement[0] - 'a' + 'A');
  }
  return replacement;
}

bool IsNegated(std::span<const Token> tokens) {
  return std::any_of(tokens.begin(), tokens.end(), [](const Token& t) {
    const std::string w = LookupKey(t.surface);
    return w == "not" || w == "never" || w == "cannot" || EndsWith(w, "n't");
  });
}

Negation Negate(std::span<const Token> tokens) {
  Negation result;
  result.tokens.assign(tokens.begin(), tokens.end());
  if (IsNegated(tokens)) {
    result.already_negated = true;
    return result;
  }
  const std::optional<std::size_t> main = MainVerb(tokens);
  if (!main) throw NoVerbError();
  const std::size_t m = *main;
  const Token& verb = tokens[m];

  auto not_token = [](std::size_t at) {
    Token t;
    t.surface = "not";
    t.span = {at, at};
    t.tag = {Category::kAdverb, std::nullopt};
    t.lemma = "not";
    return t;
  };

  // Auxiliary main verb, or an auxiliary earlier in the same clause.
  std::optional<std::size_t> aux;
  if (verb.tag.category == Category::kAuxiliary) {
    aux = m;
  } else {
    for (std::size_t j = m; j-- > 0;) {
      const Token& t = tokens[j];
      if (t.IsPunctuation() || t.tag.category == Category::kVerb) break;
      if (t.tag.category == Category::kAuxiliary) {
        aux = j;
        break;
      }
    }
  }

  if (aux) {
    bool adjacent = true;
    for (std::size_t j = *aux + 1; j < m; ++j) {
      if (tokens[j].tag.category != Category::kAdverb) adjacent = false;
    }
    // "I do like" -> "I do not like"; "Do you like" -> "Do you not like".
    const std::size_t host = (*aux == m || adjacent) ? *aux : m;
    const Token& anchor = tokens[host];
    Edit edit;
    edit.kind = EditKind::kNegation;
    edit.original = anchor.span;
    if (host == *aux) {
      edit.replacement = anchor.surface + " not";
      result.tokens.insert(result.tokens.begin() + static_cast<long>(host) + 1,
                           not_token(anchor.span.end));
    } else {
      edit.replacement = "not " + anchor.surface;
      result.tokens.insert(result.tokens.begin() + static_cast<long>(host),
                           not_token(anchor.span.start));
    }
    result.edit = std::move(edit);
    return result;
  }

  const Tense tense = verb.tag.tense.value_or(Tense::kBase);
  std::vector<Token> inserted;
  std::string support;
  switch (tense) {
    case Tense::kBase:
      support = "do";
      break;
    case Tense::kThirdSingular:
      support = "does";
      break;
    case Tense::kPast:
    case Tense::kPastParticiple:
      support = "did";
      break;
    case Tense::kGerund:
      break;
  }
  Edit edit;
  edit.kind = EditKind::kNegation;
  edit.original = verb.span;
  const std::size_t at = verb.span.start;
  if (support.empty()) {
    edit.replacement = MatchCase(verb.surface, "not " + LookupKey(verb.surface));
    Token t = not_token(at);
    t.surface = MatchCase(verb.surface, "not");
    Token v = verb;
    v.surface = LookupKey(verb.surface);
    result.tokens[m] = v;
    result.tokens.insert(result.tokens.begin() + static_cast<long>(m), t);
  } else {
    edit.replacement =
        MatchCase(verb.surface, support + " not " + verb.lemma);
    Token s;
    s.surface = MatchCase(verb.surface, support);
    s.span = {at, at};
    s.tag = {Category::kAuxiliary, tense == Tense::kPastParticiple
                                       ? Tense::kPast
                                       : tense};
    s.lemma = "do";
    Token v = verb;
    v.surface = verb.lemma;
    v.tag.tense = Tense::kBase;
    result.tokens[m] = v;
    result.tokens.insert(result.tokens.begin() + static_cast<long>(m),
                         {s, not_token(at)});
  }
  result.edit = std::move(edit);
  return result;
}

std::string Detokenize(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !tokens[i].IsPunctuation()) out.push_back(' ');
    out.append(tokens[i].surface);
  }
  return out;
}

std::string ApplyEdits(std::string_view text, std::vector<Edit> edits) {
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.original.start < b.original.start;
  });
  std::string out;
  std::size_t cursor = 0;
  for (const Edit& e : edits) {
    if (e.original.start < cursor || e.original.end > text.size()) {
      throw Error(ErrorKind::kData, "overlapping or out-of-range edit");
    }
    out.append(text.substr(cursor, e.original.start - cursor));
    out.append(e.replacement);
    cursor = e.original.end;
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace crsadv::lingo
