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

#include <gtest/gtest.h>

#include <sstream>

#include "crsadv/text.h"
#include "test_paths.h"

namespace crsadv::perturb {
namespace {

const lexicon::Lexicon& Lex() {
  static const lexicon::Lexicon lex = lexicon::Lexicon::Load(testing::Bundled("lexicon.tsv"));
  return lex;
}

const knowledge::KnowledgeBase& Kb() {
  static const knowledge::KnowledgeBase kb =
      knowledge::KnowledgeBase::Load(testing::Bundled("toy_kb.json"));
  return kb;
}

const std::vector<corpus::EvalInstance>& ToyInstances() {
  static const std::vector<corpus::EvalInstance> instances = [] {
    const auto loaded = corpus::LoadRedial(testing::Bundled("toy_redial.jsonl"), &Kb());
    return corpus::ExtractInstances(loaded.dialogues);
  }();
  return instances;
}

// Single-turn instance whose answer is `answer`; `title` (if any) is marked
// as a mention of `item`.
corpus::EvalInstance Instance(const std::string& answer, const std::string& title = "",
                              const std::string& item = "101",
                              Domain domain = Domain::kMovie) {
  corpus::EvalInstance inst;
  inst.dialogue_id = "t";
  inst.turn_index = 1;
  inst.domain = domain;
  corpus::Turn turn;
  turn.text = answer;
  if (!title.empty()) {
    const std::size_t at = answer.find(title);
    turn.mention_spans.push_back({at, at + title.size()});
    turn.mentioned_items.push_back(ItemId(item));
  }
  inst.context.push_back(turn);
  inst.truth = {ItemId(item)};
  return inst;
}

TEST(ScenarioTest, NamesRoundTrip) {
  for (Scenario s : kAllScenarios) EXPECT_EQ(ParseScenario(ToString(s)), s);
  EXPECT_EQ(ParseScenario("Cat2-Add"), Scenario::kCat2Add);
  EXPECT_FALSE(ParseScenario("cat3_change").has_value());
  EXPECT_EQ(ExpectationOf(Scenario::kCat1Add), Expectation::kSamePrediction);
  EXPECT_EQ(ExpectationOf(Scenario::kCat2Change), Expectation::kDifferentPrediction);
}

TEST(Cat1ChangeTest, WorkedExample) {
  const PerturbedInstance p = Cat1Change(Instance("I like watching horror movies"), Lex());
  EXPECT_FALSE(p.skipped);
  EXPECT_EQ(p.answer_adv, "I enjoy watching scary films");
  EXPECT_EQ(p.edits.size(), 3u);
  EXPECT_EQ(p.expectation, Expectation::kSamePrediction);
}

TEST(Cat1ChangeTest, KeepsTenseAndNumber) {
  EXPECT_EQ(Cat1Change(Instance("I liked horror movies"), Lex()).answer_adv,
            "I enjoyed scary films");
  EXPECT_EQ(Cat1Change(Instance("She likes a horror movie."), Lex()).answer_adv,
            "She enjoys a scary film.");
}

TEST(Cat1ChangeTest, FirstPolicyStopsAfterOneEdit) {
  const PerturbedInstance p =
      Cat1Change(Instance("I like watching horror movies"), Lex(), ReplacePolicy::kFirst);
  EXPECT_EQ(p.answer_adv, "I enjoy watching horror movies");
}

TEST(Cat1ChangeTest, ProtectedTitlesStayAndEmptyRewritesSkip) {
  const PerturbedInstance title_only =
      Cat1Change(Instance("The Last Exorcism", "The Last Exorcism"), Lex());
  EXPECT_TRUE(title_only.skipped);
  EXPECT_EQ(title_only.skip_reason, kNothingRewritable);
  EXPECT_EQ(title_only.answer_adv, "The Last Exorcism");

  const PerturbedInstance p =
      Cat1Change(Instance("I like The Last Exorcism", "The Last Exorcism"), Lex());
  EXPECT_EQ(p.answer_adv, "I enjoy The Last Exorcism");
}

TEST(Cat1AddTest, PinnedSeedReproducesTheWorkedExample) {
  const auto& instances = ToyInstances();
  const auto it = std::find_if(instances.begin(), instances.end(),
                               [](const auto& i) { return i.Id() == "2001:3"; });
  ASSERT_NE(it, instances.end());
  const auto out = PerturbCorpus(std::span(&*it, 1), Scenario::kCat1Add, Lex(), &Kb(), 9);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_FALSE(out[0].skipped) << out[0].skip_reason;
  EXPECT_EQ(out[0].answer_adv,
            "I like watching horror movies. The horror genre is a genre that has been "
            "growing on me overtime. However, I do not like action genre movies like "
            "The Fast and Furious.");
}

TEST(Cat1AddTest, SkipReasons) {
  Rng rng(1);
  const PerturbedInstance unknown = Cat1Add(Instance("I like it", "", "999999"), Kb(), rng);
  EXPECT_TRUE(unknown.skipped);
  EXPECT_EQ(unknown.skip_reason, kUnknownItem);
  EXPECT_EQ(unknown.answer_adv, "I like it");

  const auto small = knowledge::KnowledgeBase::Load(testing::TestData("small_kb.json"));
  const PerturbedInstance none =
      Cat1Add(Instance("I like horror, action and comedy", "", "1"), small, rng);
  EXPECT_TRUE(none.skipped);
  EXPECT_EQ(none.skip_reason, kNoEligibleGenre);
}

TEST(Cat1AddTest, SameSeedSameOutput) {
  const auto a = PerturbCorpus(ToyInstances(), Scenario::kCat1Add, Lex(), &Kb(), 123);
  const auto b = PerturbCorpus(ToyInstances(), Scenario::kCat1Add, Lex(), &Kb(), 123);
  EXPECT_EQ(a, b);
  const auto c = PerturbCorpus(ToyInstances(), Scenario::kCat1Add, Lex(), &Kb(), 124);
  EXPECT_NE(a, c);
}

TEST(Cat2ChangeTest, WorkedExamples) {
  const auto inst = Instance("I like watching horror movies");
  EXPECT_EQ(Cat2Change(inst, Lex(), Cat2Mode::kAntonym).answer_adv,
            "I hate watching horror movies");
  EXPECT_EQ(Cat2Change(inst, Lex(), Cat2Mode::kNegation).answer_adv,
            "I do not like watching horror movies");
  EXPECT_EQ(Cat2Change(inst, Lex(), Cat2Mode::kAuto).answer_adv,
            "I hate watching horror movies");
  EXPECT_EQ(Cat2Change(inst, Lex()).expectation, Expectation::kDifferentPrediction);
}

TEST(Cat2ChangeTest, SkipsAndFallbacks) {
  const PerturbedInstance verbless = Cat2Change(Instance("Horror movies!"), Lex());
  EXPECT_TRUE(verbless.skipped);
  EXPECT_EQ(verbless.skip_reason, kNoVerb);
  const PerturbedInstance negated = Cat2Change(Instance("I do not like horror"), Lex());
  EXPECT_TRUE(negated.skipped);
  EXPECT_EQ(negated.skip_reason, kAlreadyNegated);
  // "watch" has no antonym in the bundled lexicon.
  const auto watch = Instance("I watch horror movies");
  const PerturbedInstance strict = Cat2Change(watch, Lex(), Cat2Mode::kAntonym);
  EXPECT_TRUE(strict.skipped);
  EXPECT_EQ(strict.skip_reason, kNoAntonym);
  EXPECT_EQ(Cat2Change(watch, Lex(), Cat2Mode::kAuto).answer_adv,
            "I do not watch horror movies");
  EXPECT_EQ(Cat2Change(Instance("She liked it."), Lex(), Cat2Mode::kAntonym).answer_adv,
            "She hated it.");
}

TEST(Cat2AddTest, WorkedExampleAndTemplates) {
  const PerturbedInstance p =
      Cat2Add(Instance("I do like the Exorcist", "the Exorcist", "102"), Lex());
  EXPECT_FALSE(p.skipped);
  EXPECT_EQ(p.answer_adv, "I do like the Exorcist But I'm not in the mood to watch it.");

  const PerturbedInstance book = Cat2Add(
      Instance("I love Dracula", "Dracula", "805", Domain::kBook), Lex());
  EXPECT_EQ(book.answer_adv, "I love Dracula But I'm not in the mood to read it.");

  const PerturbedInstance hate =
      Cat2Add(Instance("I hate that movie"), Lex());
  EXPECT_EQ(hate.answer_adv, "I hate that movie But that is not what I want at all.");
}

struct DesireCase {
  const char* text;
  const char* title;
  bool expected;
};

TEST(Cat2AddTest, DesireDetectorOnLabeledFixtures) {
  const DesireCase cases[] = {
      {"I do like the Exorcist", "the Exorcist", true},
      {"I really love Halloween", "Halloween", true},
      {"I would prefer Get Out", "Get Out", true},
      {"I want to see Die Hard", "Die Hard", true},
      {"I enjoyed Get Out a lot", "Get Out", true},
      {"I do not like the Exorcist", "the Exorcist", false},
      {"I never enjoyed Halloween", "Halloween", false},
      {"I don't want Die Hard", "Die Hard", false},
      {"I hate Get Out", "Get Out", false},
      {"I like horror movies", "", false},
      {"Halloween is fine", "Halloween", false},
      {"I saw Get Out yesterday", "Get Out", false},
  };
  for (const DesireCase& c : cases) {
    const auto inst = Instance(c.text, c.title);
    const auto& answer = inst.answer();
    const auto tokens = lingo::Tag(lingo::Tokenize(answer.text, answer.mention_spans), Lex());
    EXPECT_EQ(ExpressesDesire(tokens, !answer.mentioned_items.empty()), c.expected) << c.text;
  }
}

TEST(PerturbCorpusTest, ToyCorpusIsMostlyRewritable) {
  const auto out = PerturbCorpus(ToyInstances(), Scenario::kCat1Change, Lex(), &Kb(), 42);
  ASSERT_EQ(out.size(), ToyInstances().size());
  ASSERT_EQ(out.size(), 20u);
  const auto kept = std::count_if(out.begin(), out.end(), [](const auto& p) { return !p.skipped; });
  EXPECT_GE(kept, 15);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].base, ToyInstances()[i]);
  }
}

TEST(PerturbCorpusTest, OnlyCat1AddDependsOnTheSeed) {
  for (Scenario s : {Scenario::kCat1Change, Scenario::kCat2Change, Scenario::kCat2Add}) {
    EXPECT_EQ(PerturbCorpus(ToyInstances(), s, Lex(), &Kb(), 1),
              PerturbCorpus(ToyInstances(), s, Lex(), &Kb(), 2))
        << ToString(s);
  }
  EXPECT_TRUE(PerturbCorpus({}, Scenario::kCat1Add, Lex(), &Kb(), 1).empty());
  EXPECT_THROW(PerturbCorpus(ToyInstances(), Scenario::kCat1Add, Lex(), nullptr, 1),
               UsageError);
}

TEST(PerturbCorpusTest, TruncatesLongRewrites) {
  std::string answer = "I like";
  for (int i = 0; i < 300; ++i) answer += " movies";
  corpus::EvalInstance inst = Instance(answer);
  const auto out = PerturbCorpus(std::span(&inst, 1), Scenario::kCat2Add, Lex(), nullptr, 1);
  EXPECT_LE(text::CountWords(out[0].answer_adv), corpus::kMaxUtteranceWords);
}

TEST(PerturbedFileTest, RoundTripAndValidation) {
  const auto out = PerturbCorpus(ToyInstances(), Scenario::kCat2Change, Lex(), &Kb(), 42);
  PerturbedHeader header;
  header.scenario = Scenario::kCat2Change;
  header.seed = 42;
  header.lexicon_digest = "abc";
  header.count = out.size();
  std::stringstream buffer;
  WritePerturbed(buffer, header, out);
  const std::string written = buffer.str();
  const PerturbedFile back = ReadPerturbed(buffer);
  EXPECT_EQ(back.header, header);
  EXPECT_EQ(back.instances, out);

  // A truncated file no longer matches its declared count.
  std::istringstream truncated(written.substr(0, written.rfind('\n', written.size() - 2) + 1));
  EXPECT_THROW(ReadPerturbed(truncated), DataError);
  std::istringstream garbage("{\"schema\": \"other\"}\n");
  EXPECT_THROW(ReadPerturbed(garbage), DataError);
}

}  // namespace
}  // namespace crsadv::perturb
