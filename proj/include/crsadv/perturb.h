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

#ifndef CRSADV_PERTURB_H_
#define CRSADV_PERTURB_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsadv/corpus.h"
#include "crsadv/knowledge.h"
#include "crsadv/lexicon.h"
#include "crsadv/lingo.h"
#include "crsadv/rng.h"
#include "json.hpp"

namespace crsadv::perturb {

// Cat1 rewrites keep the meaning (a robust recommender should not move);
// Cat2 rewrites reverse it (a robust recommender should move).
enum class Scenario { kCat1Change, kCat1Add, kCat2Change, kCat2Add };
enum class Expectation { kSamePrediction, kDifferentPrediction };

inline constexpr Scenario kAllScenarios[] = {
    Scenario::kCat1Change, Scenario::kCat1Add, Scenario::kCat2Change,
    Scenario::kCat2Add};

std::string_view ToString(Scenario scenario);
// Accepts "cat1_change" and "cat1-change" spellings.
std::optional<Scenario> ParseScenario(std::string_view text);
// "Cat1-Change" etc., for tables.
std::string_view DisplayName(Scenario scenario);
bool IsCat1(Scenario scenario);
Expectation ExpectationOf(Scenario scenario);
std::string_view ToString(Expectation expectation);
std::optional<Expectation> ParseExpectation(std::string_view text);

enum class Cat2Mode { kAntonym, kNegation, kAuto };
std::string_view ToString(Cat2Mode mode);
std::optional<Cat2Mode> ParseCat2Mode(std::string_view text);

// Cat1-Change replaces every eligible word, or only the first one.
enum class ReplacePolicy { kAll, kFirst };
std::string_view ToString(ReplacePolicy policy);
std::optional<ReplacePolicy> ParseReplacePolicy(std::string_view text);

struct ContradictionTemplates {
  std::string movie = "But I'm not in the mood to watch it.";
  std::string book = "But I'm not in the mood to read it.";
  std::string generic = "But that is not what I want at all.";
};

struct PerturbOptions {
  Cat2Mode cat2_mode = Cat2Mode::kAuto;
  ReplacePolicy replace_policy = ReplacePolicy::kAll;
  ContradictionTemplates templates;
};

// Skip reasons.
inline constexpr std::string_view kNothingRewritable = "NothingRewritable";
inline constexpr std::string_view kUnknownItem = "UnknownItem";
inline constexpr std::string_view kNoEligibleGenre = "NoEligibleGenre";
inline constexpr std::string_view kEmptyGenre = "EmptyGenre";
inline constexpr std::string_view kNoVerb = "NoVerb";
inline constexpr std::string_view kAlreadyNegated = "AlreadyNegated";
inline constexpr std::string_view kNoAntonym = "NoAntonym";
inline constexpr std::string_view kUnchanged = "Unchanged";

struct PerturbedInstance {
  corpus::EvalInstance base;
  Scenario scenario = Scenario::kCat1Change;
  Expectation expectation = Expectation::kSamePrediction;
  // A'; equals the original answer when skipped.
  std::string answer_adv;
  // Against the original answer text.
  std::vector<lingo::Edit> edits;
  bool skipped = false;
  std::string skip_reason;

  friend bool operator==(const PerturbedInstance&,
                         const PerturbedInstance&) = default;
};

// Synonym rewrite: verbs (re-inflected to their original tense) and nouns
// (number kept) take their rank-0 synonym. Protected title tokens are left
// alone. Skipped when nothing was replaced.
PerturbedInstance Cat1Change(const corpus::EvalInstance& instance,
                             const lexicon::Lexicon& lexicon,
                             ReplacePolicy policy = ReplacePolicy::kAll);

// Detail injection: appends the description of the ground-truth item's
// primary genre and a dislike sentence about a random item from a contrast
// genre that the conversation never touches.
PerturbedInstance Cat1Add(const corpus::EvalInstance& instance,
                          const knowledge::KnowledgeBase& kb, Rng& rng);

// Opposite rewrite of the main verb by antonym or negation.
PerturbedInstance Cat2Change(const corpus::EvalInstance& instance,
                             const lexicon::Lexicon& lexicon,
                             Cat2Mode mode = Cat2Mode::kAuto);

// Appends a contradiction: the domain template when the answer expresses
// desire (like/love/enjoy/want/prefer, not negated) alongside a mentioned
// item, the generic template otherwise. Never skipped.
PerturbedInstance Cat2Add(const corpus::EvalInstance& instance,
                          const lexicon::Lexicon& lexicon,
                          const ContradictionTemplates& templates = {});

// True when the answer tokens express desire for a mentioned item.
bool ExpressesDesire(std::span<const lingo::Token> tokens,
                     bool has_mentioned_item);

// Applies `scenario` to every instance with a per-instance generator seeded
// from (seed, dialogue id, turn index), truncates A' to the utterance limit,
// and keeps input order. `kb` is required for Cat1-Add.
std::vector<PerturbedInstance> PerturbCorpus(
    std::span<const corpus::EvalInstance> instances, Scenario scenario,
    const lexicon::Lexicon& lexicon, const knowledge::KnowledgeBase* kb,
    std::uint64_t seed, const PerturbOptions& options = {});

// Perturbed-instance file: a header line followed by one instance per line.
inline constexpr std::string_view kPerturbedSchema = "crsadv.perturbed/1";

struct PerturbedHeader {
  Scenario scenario = Scenario::kCat1Change;
  std::uint64_t seed = 0;
  Cat2Mode cat2_mode = Cat2Mode::kAuto;
  ReplacePolicy replace_policy = ReplacePolicy::kAll;
  std::string lexicon_digest;
  std::string kb_digest;
  std::size_t count = 0;

  friend bool operator==(const PerturbedHeader&,
                         const PerturbedHeader&) = default;
};

nlohmann::json ToJson(const PerturbedInstance& instance);
PerturbedInstance PerturbedFromJson(const nlohmann::json& j);
nlohmann::json ToJson(const PerturbedHeader& header);
PerturbedHeader HeaderFromJson(const nlohmann::json& j);

void WritePerturbed(std::ostream& out, const PerturbedHeader& header,
                    std::span<const PerturbedInstance> instances);

struct PerturbedFile {
  PerturbedHeader header;
  std::vector<PerturbedInstance> instances;
};
PerturbedFile ReadPerturbed(std::istream& in);

}  // namespace crsadv::perturb

#endif  // CRSADV_PERTURB_H_
