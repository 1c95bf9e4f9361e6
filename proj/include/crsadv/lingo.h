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

#ifndef CRSADV_LINGO_H_
#define CRSADV_LINGO_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsadv/errors.h"
#include "crsadv/lexicon.h"
#include "crsadv/types.h"

// Rule-based English processing for rewriting user utterances: tokenizer,
// lexicon + suffix-rule tagger, verb inflection, negation and detokenizer.
// Everything here is stateless after the built-in tables are parsed, and
// safe to call concurrently.
namespace crsadv::lingo {

enum class Category {
  kNoun,
  kVerb,
  kAuxiliary,
  kAdjective,
  kAdverb,
  kPronoun,
  kOther,
};

enum class Tense { kBase, kThirdSingular, kPast, kGerund, kPastParticiple };

std::string_view ToString(Category category);
std::string_view ToString(Tense tense);
std::optional<Category> ParseCategory(std::string_view text);
std::optional<Tense> ParseTense(std::string_view text);

// `tense` is set iff category is kVerb or kAuxiliary.
struct PosTag {
  Category category = Category::kOther;
  std::optional<Tense> tense;

  friend bool operator==(const PosTag&, const PosTag&) = default;
};

struct Token {
  std::string surface;
  Span span;
  PosTag tag;
  // Inside a mentioned item title; never rewritten.
  bool is_protected = false;
  // Lowercased dictionary form, filled by Tag().
  std::string lemma;
  bool plural = false;

  bool IsPunctuation() const;
};

enum class EditKind { kSynonym, kAntonym, kNegation, kAppend };

std::string_view ToString(EditKind kind);
std::optional<EditKind> ParseEditKind(std::string_view text);

// Replace source bytes `original` with `replacement`. Appends use an empty
// span at the end of the source.
struct Edit {
  EditKind kind = EditKind::kSynonym;
  Span original;
  std::string replacement;

  friend bool operator==(const Edit&, const Edit&) = default;
};

class NoVerbError : public Error {
 public:
  NoVerbError() : Error(ErrorKind::kData, "sentence has no verb") {}
};

// Splits on whitespace and peels trailing . , ! ? into their own tokens.
// Contractions stay whole. Tokens overlapping any of `protected_spans` are
// marked protected.
std::vector<Token> Tokenize(std::string_view text,
                            std::span<const Span> protected_spans = {});

// Fills tag, lemma and plural. Resolution order: closed-class table,
// irregular verb forms, lexicon (with regular inflection analysis), then
// suffix rules for unknown words (-ing gerund, -ed past, -ly adverb,
// otherwise noun). Protected tokens are tagged as nouns.
std::vector<Token> Tag(std::vector<Token> tokens,
                       const lexicon::Lexicon& lexicon);

// First unprotected non-auxiliary verb, else first unprotected auxiliary.
std::optional<std::size_t> MainVerb(std::span<const Token> tokens);

// Inflects a base-form verb. Multi-word lemmas inflect their first word.
std::string Inflect(std::string_view lemma, Tense tense);
std::string Pluralize(std::string_view noun);

// Copies the capitalization of `model`'s first letter onto `replacement`.
std::string MatchCase(std::string_view model, std::string replacement);

// Contains not, never, cannot or an n't contraction.
bool IsNegated(std::span<const Token> tokens);

struct Negation {
  std::vector<Token> tokens;
  // Unset when the input was already negated.
  std::optional<Edit> edit;
  bool already_negated = false;
};

// Inserts exactly one negation at the main verb:
//   auxiliary main verb            -> "<aux> not"
//   verb governed by an auxiliary  -> "not" after the auxiliary
//   base / third_singular / past   -> "do not" / "does not" / "did not" + lemma
// Throws NoVerbError when there is no verb.
Negation Negate(std::span<const Token> tokens);

// Single spaces between words, no space before punctuation.
std::string Detokenize(std::span<const Token> tokens);

// Applies non-overlapping edits to `text`.
std::string ApplyEdits(std::string_view text, std::vector<Edit> edits);

struct VerbForms {
  std::string lemma;
  std::string third_singular;
  std::string past;
  std::string gerund;
  std::string past_participle;

  const std::string& Get(Tense tense) const;
};

// The built-in irregular verb table, in file order.
const std::vector<VerbForms>& IrregularVerbs();
const VerbForms* FindIrregular(std::string_view lemma);

// Closed-class lookup (pronouns, auxiliaries, function words).
std::optional<PosTag> ClosedClassTag(std::string_view word);

}  // namespace crsadv::lingo

#endif  // CRSADV_LINGO_H_
