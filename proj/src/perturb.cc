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

#include "crsadv/perturb.h"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <set>

#include "crsadv/errors.h"
#include "crsadv/text.h"

namespace crsadv::perturb {
namespace {

using lingo::Category;
using lingo::Edit;
using lingo::EditKind;
using lingo::Token;
using nlohmann::json;

constexpr std::array<std::string_view, 5> kDesireVerbs = {
    "like", "love", "enjoy", "want", "prefer"};

PerturbedInstance Start(const corpus::EvalInstance& instance,
                        Scenario scenario) {
  PerturbedInstance out;
  out.base = instance;
  out.scenario = scenario;
  out.expectation = ExpectationOf(scenario);
  out.answer_adv = instance.answer().text;
  return out;
}

PerturbedInstance Skip(PerturbedInstance out, std::string_view reason) {
  out.skipped = true;
  out.skip_reason = std::string(reason);
  out.answer_adv = out.base.answer().text;
  out.edits.clear();
  return out;
}

std::vector<Token> TaggedAnswer(const corpus::EvalInstance& instance,
                                const lexicon::Lexicon& lexicon) {
  const corpus::Turn& answer = instance.answer();
  return lingo::Tag(lingo::Tokenize(answer.text, answer.mention_spans), lexicon);
}

PerturbedInstance Finish(PerturbedInstance out) {
  out.answer_adv = lingo::ApplyEdits(out.base.answer().text, out.edits);
  return out;
}

}  // namespace

std::string_view ToString(Scenario scenario) {
  switch (scenario) {
    case Scenario::kCat1Change:
      return "cat1_change";
    case Scenario::kCat1Add:
      return "cat1_add";
    case Scenario::kCat2Change:
      return "cat2_change";
    case Scenario::kCat2Add:
      return "cat2_add";
  }
  return "cat1_change";
}

std::optional<Scenario> ParseScenario(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), '-', '_');
  s = crsadv::text::AsciiLower(s);
  for (Scenario sc : kAllScenarios) {
    if (ToString(sc) == s) return sc;
  }
  return std::nullopt;
}

std::string_view DisplayName(Scenario scenario) {
  switch (scenario) {
    case Scenario::kCat1Change:
      return "Cat1-Change";
    case Scenario::kCat1Add:
      return "Cat1-Add";
    case Scenario::kCat2Change:
      return "Cat2-Change";
    case Scenario::kCat2Add:
      return "Cat2-Add";
  }
  return "";
}

bool IsCat1(Scenario scenario) {
  return scenario == Scenario::kCat1Change || scenario == Scenario::kCat1Add;
}

Expectation ExpectationOf(Scenario scenario) {
  return IsCat1(scenario) ? Expectation::kSamePrediction
                          : Expectation::kDifferentPrediction;
}

std::string_view ToString(Expectation expectation) {
  return expectation == Expectation::kSamePrediction ? "same_prediction"
                                                     : "different_prediction";
}

std::optional<Expectation> ParseExpectation(std::string_view text) {
  if (text == "same_prediction") return Expectation::kSamePrediction;
  if (text == "different_prediction") return Expectation::kDifferentPrediction;
  return std::nullopt;
}

std::string_view ToString(Cat2Mode mode) {
  switch (mode) {
    case Cat2Mode::kAntonym:
      return "antonym";
    case Cat2Mode::kNegation:
      return "negation";
    case Cat2Mode::kAuto:
      return "auto";
  }
  return "auto";
}

std::optional<Cat2Mode> ParseCat2Mode(std::string_view text) {
  if (text == "antonym") return Cat2Mode::kAntonym;
  if (text == "negation") return Cat2Mode::kNegation;
  if (text == "auto") return Cat2Mode::kAuto;
  return std::nullopt;
}

std::string_view ToString(ReplacePolicy policy) {
  return policy == ReplacePolicy::kAll ? "all" : "first";
}

std::optional<ReplacePolicy> ParseReplacePolicy(std::string_view text) {
  if (text == "all") return ReplacePolicy::kAll;
  if (text == "first") return ReplacePolicy::kFirst;
  return std::nullopt;
}

PerturbedInstance Cat1Change(const corpus::EvalInstance& instance,
                             const lexicon::Lexicon& lexicon,
                             ReplacePolicy policy) {
  PerturbedInstance out = Start(instance, Scenario::kCat1Change);
  for (const Token& token : TaggedAnswer(instance, lexicon)) {
    if (token.is_protected) continue;
    std::optional<std::string> replacement;
    if (token.tag.category == Category::kVerb) {
      if (auto syn = lexicon.Synonym(token.lemma, lexicon::Pos::kVerb)) {
        replacement = lingo::Inflect(*syn, token.tag.tense.value_or(lingo::Tense::kBase));
      }
    } else if (token.tag.category == Category::kNoun) {
      if (auto syn = lexicon.Synonym(token.lemma, lexicon::Pos::kNoun)) {
        replacement = token.plural ? lingo::Pluralize(*syn) : *syn;
      }
    }
    if (!replacement) continue;
    std::string cased = lingo::MatchCase(token.surface, std::move(*replacement));
    if (cased == token.surface) continue;
    out.edits.push_back({EditKind::kSynonym, token.span, std::move(cased)});
    if (policy == ReplacePolicy::kFirst) break;
  }
  if (out.edits.empty()) return Skip(std::move(out), kNothingRewritable);
  return Finish(std::move(out));
}

PerturbedInstance Cat1Add(const corpus::EvalInstance& instance,
                          const knowledge::KnowledgeBase& kb, Rng& rng) {
  PerturbedInstance out = Start(instance, Scenario::kCat1Add);
  if (instance.truth.empty()) return Skip(std::move(out), kUnknownItem);
  try {
    const std::string& target = kb.GenreOf(instance.truth.front());

    std::set<std::string> conversation_genres;
    std::set<ItemId> mentioned(instance.truth.begin(), instance.truth.end());
    for (const corpus::Turn& turn : instance.context) {
      const std::set<std::string> named = kb.GenresMentionedIn(turn.text);
      conversation_genres.insert(named.begin(), named.end());
      for (const ItemId& id : turn.mentioned_items) {
        mentioned.insert(id);
        if (const knowledge::Item* item = kb.FindItem(id)) {
          conversation_genres.insert(item->genres.begin(), item->genres.end());
        }
      }
    }

    const std::string& contrast =
        kb.ContrastGenre(conversation_genres, target, rng, instance.domain);
    const knowledge::Item& disliked =
        kb.SampleItem(contrast, mentioned, rng, instance.domain);

    std::string addition = kb.FindGenre(target)->description;
    addition += " However, I do not like " + contrast + " genre ";
    addition += instance.domain == Domain::kMovie ? "movies" : "books";
    addition += " like " + disliked.title;
    const char last = disliked.title.empty() ? ' ' : disliked.title.back();
    if (last != '.' && last != '!' && last != '?') addition.push_back('.');

    const std::size_t end = instance.answer().text.size();
    out.edits.push_back({EditKind::kAppend, {end, end}, " " + addition});
  } catch (const knowledge::UnknownItemError&) {
    return Skip(std::move(out), kUnknownItem);
  } catch (const knowledge::NoEligibleGenreError&) {
    return Skip(std::move(out), kNoEligibleGenre);
  } catch (const knowledge::EmptyGenreError&) {
    return Skip(std::move(out), kEmptyGenre);
  }
  return Finish(std::move(out));
}

PerturbedInstance Cat2Change(const corpus::EvalInstance& instance,
                             const lexicon::Lexicon& lexicon, Cat2Mode mode) {
  PerturbedInstance out = Start(instance, Scenario::kCat2Change);
  const std::vector<Token> tokens = TaggedAnswer(instance, lexicon);
  if (lingo::IsNegated(tokens)) return Skip(std::move(out), kAlreadyNegated);
  const std::optional<std::size_t> main = lingo::MainVerb(tokens);
  if (!main) return Skip(std::move(out), kNoVerb);
  const Token& verb = tokens[*main];

  if (mode != Cat2Mode::kNegation && verb.tag.category == Category::kVerb) {
    if (auto ant = lexicon.Antonym(verb.lemma, lexicon::Pos::kVerb)) {
      std::string replacement = lingo::MatchCase(
          verb.surface,
          lingo::Inflect(*ant, verb.tag.tense.value_or(lingo::Tense::kBase)));
      out.edits.push_back({EditKind::kAntonym, verb.span, std::move(replacement)});
      return Finish(std::move(out));
    }
  }
  if (mode == Cat2Mode::kAntonym) return Skip(std::move(out), kNoAntonym);

  const lingo::Negation negation = lingo::Negate(tokens);
  if (!negation.edit) return Skip(std::move(out), kAlreadyNegated);
  out.edits.push_back(*negation.edit);
  return Finish(std::move(out));
}

bool ExpressesDesire(std::span<const Token> tokens, bool has_mentioned_item) {
  if (!has_mentioned_item) return false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.is_protected || t.tag.category != Category::kVerb) continue;
    if (std::find(kDesireVerbs.begin(), kDesireVerbs.end(), t.lemma) ==
        kDesireVerbs.end()) {
      continue;
    }
    std::size_t clause_start = i;
    while (clause_start > 0 && !tokens[clause_start - 1].IsPunctuation()) {
      --clause_start;
    }
    if (!lingo::IsNegated(tokens.subspan(clause_start, i - clause_start))) {
      return true;
    }
  }
  return false;
}

PerturbedInstance Cat2Add(const corpus::EvalInstance& instance,
                          const lexicon::Lexicon& lexicon,
                          const ContradictionTemplates& templates) {
  PerturbedInstance out = Start(instance, Scenario::kCat2Add);
  const corpus::Turn& answer = instance.answer();
  const bool desire = ExpressesDesire(TaggedAnswer(instance, lexicon),
                                      !answer.mentioned_items.empty());
  const std::string& sentence =
      !desire ? templates.generic
              : (instance.domain == Domain::kMovie ? templates.movie
                                                   : templates.book);
  const std::size_t end = answer.text.size();
  out.edits.push_back({EditKind::kAppend, {end, end}, " " + sentence});
  return Finish(std::move(out));
}

std::vector<PerturbedInstance> PerturbCorpus(
    std::span<const corpus::EvalInstance> instances, Scenario scenario,
    const lexicon::Lexicon& lexicon, const knowledge::KnowledgeBase* kb,
    std::uint64_t seed, const PerturbOptions& options) {
  if (scenario == Scenario::kCat1Add && kb == nullptr) {
    throw UsageError("cat1_add needs a knowledge base");
  }
  std::vector<PerturbedInstance> results;
  results.reserve(instances.size());
  for (const corpus::EvalInstance& instance : instances) {
    Rng rng(DeriveSeed(seed, instance.dialogue_id, instance.turn_index));
    PerturbedInstance p;
    switch (scenario) {
      case Scenario::kCat1Change:
        p = Cat1Change(instance, lexicon, options.replace_policy);
        break;
      case Scenario::kCat1Add:
        p = Cat1Add(instance, *kb, rng);
        break;
      case Scenario::kCat2Change:
        p = Cat2Change(instance, lexicon, options.cat2_mode);
        break;
      case Scenario::kCat2Add:
        p = Cat2Add(instance, lexicon, options.templates);
        break;
    }
    if (!p.skipped) {
      p.answer_adv = corpus::TruncateUtterance(p.answer_adv);
      if (p.answer_adv == instance.answer().text) p = Skip(std::move(p), kUnchanged);
    }
    results.push_back(std::move(p));
  }
  return results;
}

json ToJson(const PerturbedInstance& p) {
  json edits = json::array();
  const std::string& source = p.base.answer().text;
  for (const Edit& e : p.edits) {
    edits.push_back({{"kind", lingo::ToString(e.kind)},
                     {"start", e.original.start},
                     {"end", e.original.end},
                     {"original", source.substr(e.original.start, e.original.size())},
                     {"replacement", e.replacement}});
  }
  return {{"id", p.base.Id()},
          {"scenario", ToString(p.scenario)},
          {"expectation", ToString(p.expectation)},
          {"answer", source},
          {"answer_adv", p.answer_adv},
          {"edits", edits},
          {"skipped", p.skipped},
          {"skip_reason", p.skipped ? json(p.skip_reason) : json(nullptr)},
          {"base", corpus::ToJson(p.base)}};
}

PerturbedInstance PerturbedFromJson(const json& j) {
  PerturbedInstance p;
  try {
    p.base = corpus::InstanceFromJson(j.at("base"));
    const auto scenario = ParseScenario(j.at("scenario").get<std::string>());
    const auto expectation =
        ParseExpectation(j.at("expectation").get<std::string>());
    if (!scenario || !expectation) throw DataError("bad scenario or expectation");
    p.scenario = *scenario;
    p.expectation = *expectation;
    if (p.expectation != ExpectationOf(p.scenario)) {
      throw DataError("expectation does not match scenario");
    }
    p.answer_adv = j.at("answer_adv").get<std::string>();
    for (const json& e : j.at("edits")) {
      const auto kind = lingo::ParseEditKind(e.at("kind").get<std::string>());
      if (!kind) throw DataError("bad edit kind");
      p.edits.push_back({*kind,
                         {e.at("start").get<std::size_t>(), e.at("end").get<std::size_t>()},
                         e.at("replacement").get<std::string>()});
    }
    p.skipped = j.at("skipped").get<bool>();
    if (p.skipped) p.skip_reason = j.at("skip_reason").get<std::string>();
  } catch (const json::exception& e) {
    throw DataError(std::string("bad perturbed record: ") + e.what());
  }
  return p;
}

json ToJson(const PerturbedHeader& h) {
  return {{"schema", kPerturbedSchema},
          {"scenario", ToString(h.scenario)},
          {"expectation", ToString(ExpectationOf(h.scenario))},
          {"seed", h.seed},
          {"cat2_mode", ToString(h.cat2_mode)},
          {"replace_policy", ToString(h.replace_policy)},
          {"lexicon_digest", h.lexicon_digest},
          {"kb_digest", h.kb_digest},
          {"count", h.count}};
}

PerturbedHeader HeaderFromJson(const json& j) {
  if (j.value("schema", std::string()) != kPerturbedSchema) {
    throw DataError("not a perturbed-instance file (schema " +
                    std::string(kPerturbedSchema) + " expected)");
  }
  PerturbedHeader h;
  try {
    const auto scenario = ParseScenario(j.at("scenario").get<std::string>());
    const auto mode = ParseCat2Mode(j.at("cat2_mode").get<std::string>());
    const auto policy =
        ParseReplacePolicy(j.at("replace_policy").get<std::string>());
    if (!scenario || !mode || !policy) throw DataError("bad perturbed header");
    h.scenario = *scenario;
    h.cat2_mode = *mode;
    h.replace_policy = *policy;
    h.seed = j.at("seed").get<std::uint64_t>();
    h.lexicon_digest = j.at("lexicon_digest").get<std::string>();
    h.kb_digest = j.at("kb_digest").get<std::string>();
    h.count = j.at("count").get<std::size_t>();
  } catch (const json::exception& e) {
    throw DataError(std::string("bad perturbed header: ") + e.what());
  }
  return h;
}

void WritePerturbed(std::ostream& out, const PerturbedHeader& header,
                    std::span<const PerturbedInstance> instances) {
  out << ToJson(header).dump() << '\n';
  for (const PerturbedInstance& p : instances) out << ToJson(p).dump() << '\n';
}

PerturbedFile ReadPerturbed(std::istream& in) {
  PerturbedFile file;
  std::string line;
  int line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (text::Trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        file.header = HeaderFromJson(j);
        have_header = true;
        continue;
      }
      file.instances.push_back(PerturbedFromJson(j));
      if (file.instances.back().scenario != file.header.scenario) {
        throw DataError("instance scenario differs from header");
      }
    } catch (const json::parse_error& e) {
      throw DataError(std::string("malformed JSON: ") + e.what(), line_number);
    } catch (const DataError& e) {
      if (e.line()) throw;
      throw DataError(e.what(), line_number);
    }
  }
  if (!have_header) throw DataError("empty perturbed-instance file");
  if (file.instances.size() != file.header.count) {
    throw DataError("header count " + std::to_string(file.header.count) +
                    " but " + std::to_string(file.instances.size()) +
                    " instances");
  }
  return file;
}

}  // namespace crsadv::perturb
