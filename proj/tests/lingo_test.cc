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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "crsadv/text.h"
#include "test_paths.h"

namespace crsadv::lingo {
namespace {

const lexicon::Lexicon& Bundled() {
  static const lexicon::Lexicon lex =
      lexicon::Lexicon::Load(testing::Bundled("lexicon.tsv"));
  return lex;
}

std::vector<Token> Tagged(const std::string& text, std::vector<Span> protect = {}) {
  return Tag(Tokenize(text, protect), Bundled());
}

std::string Negated(const std::string& text) {
  const auto tokens = Tagged(text);
  const Negation n = Negate(tokens);
  if (!n.edit) return text;
  return ApplyEdits(text, {*n.edit});
}

TEST(TokenizeTest, SplitsTrailingPunctuation) {
  EXPECT_EQ(Tokenize("I do like the Exorcist").size(), 5u);
  const auto tokens = Tokenize("I do like the Exorcist.");
  ASSERT_EQ(tokens.size(), 6u);
  EXPECT_EQ(tokens[5].surface, ".");
  EXPECT_TRUE(tokens[5].IsPunctuation());
  EXPECT_EQ(tokens[4].span.start, 14u);
  EXPECT_EQ(tokens[4].span.end, 22u);
  EXPECT_EQ(Tokenize("Really?!").size(), 3u);
  EXPECT_EQ(Tokenize("don't").size(), 1u);
}

TEST(TokenizeTest, MarksProtectedTokens) {
  const std::string text = "I loved The Last Exorcism a lot";
  const std::vector<Span> spans = {{8, 25}};
  const auto tokens = Tokenize(text, spans);
  ASSERT_EQ(tokens.size(), 7u);
  EXPECT_FALSE(tokens[1].is_protected);
  EXPECT_TRUE(tokens[2].is_protected);
  EXPECT_TRUE(tokens[4].is_protected);
  EXPECT_FALSE(tokens[5].is_protected);
}

TEST(TagTest, PaperSentence) {
  const auto t = Tagged("I like watching horror movies");
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0].tag.category, Category::kPronoun);
  EXPECT_EQ(t[1].tag, (PosTag{Category::kVerb, Tense::kBase}));
  EXPECT_EQ(t[2].tag, (PosTag{Category::kVerb, Tense::kGerund}));
  EXPECT_EQ(t[2].lemma, "watch");
  EXPECT_EQ(t[3].tag.category, Category::kNoun);
  EXPECT_EQ(t[4].tag.category, Category::kNoun);
  EXPECT_TRUE(t[4].plural);
  EXPECT_EQ(t[4].lemma, "movie");
}

TEST(TagTest, TensesAndIrregulars) {
  EXPECT_EQ(Tagged("She likes it")[1].tag, (PosTag{Category::kVerb, Tense::kThirdSingular}));
  EXPECT_EQ(Tagged("I liked it")[1].tag, (PosTag{Category::kVerb, Tense::kPast}));
  const auto saw = Tagged("They saw it");
  EXPECT_EQ(saw[1].tag, (PosTag{Category::kVerb, Tense::kPast}));
  EXPECT_EQ(saw[1].lemma, "see");
  EXPECT_EQ(Tagged("I have seen it")[2].tag,
            (PosTag{Category::kVerb, Tense::kPastParticiple}));
  EXPECT_EQ(Tagged("I do like it")[1].tag.category, Category::kAuxiliary);
}

TEST(TagTest, LikeAfterNounIsAPreposition) {
  const auto t = Tagged("I enjoy scary movies like Halloween");
  EXPECT_EQ(t[4].tag.category, Category::kOther);
  const auto u = Tagged("something scary like a horror movie");
  EXPECT_EQ(u[2].tag.category, Category::kOther);
}

TEST(TagTest, ProtectedTokensAreNouns) {
  const auto t = Tagged("I like Gone Girl", {{7, 16}});
  EXPECT_EQ(t[2].tag.category, Category::kNoun);
  EXPECT_TRUE(t[2].is_protected);
}

TEST(TagTest, UnknownWordsFallBackOnSuffixes) {
  const auto t = Tagged("He zorbled quickly while blorking gadgets");
  EXPECT_EQ(t[1].tag, (PosTag{Category::kVerb, Tense::kPast}));
  EXPECT_EQ(t[2].tag.category, Category::kAdverb);
  EXPECT_EQ(t[4].tag, (PosTag{Category::kVerb, Tense::kGerund}));
  EXPECT_EQ(t[5].tag.category, Category::kNoun);
}

struct InflectCase {
  const char* lemma;
  const char* third;
  const char* past;
  const char* gerund;
};

TEST(InflectTest, RegularAndIrregularForms) {
  const InflectCase cases[] = {
      {"like", "likes", "liked", "liking"},
      {"watch", "watches", "watched", "watching"},
      {"try", "tries", "tried", "trying"},
      {"play", "plays", "played", "playing"},
      {"stop", "stops", "stopped", "stopping"},
      {"prefer", "prefers", "preferred", "preferring"},
      {"visit", "visits", "visited", "visiting"},
      {"die", "dies", "died", "dying"},
      {"see", "sees", "saw", "seeing"},
      {"go", "goes", "went", "going"},
      {"enjoy", "enjoys", "enjoyed", "enjoying"},
      {"hate", "hates", "hated", "hating"},
  };
  for (const InflectCase& c : cases) {
    EXPECT_EQ(Inflect(c.lemma, Tense::kBase), c.lemma);
    EXPECT_EQ(Inflect(c.lemma, Tense::kThirdSingular), c.third) << c.lemma;
    EXPECT_EQ(Inflect(c.lemma, Tense::kPast), c.past) << c.lemma;
    EXPECT_EQ(Inflect(c.lemma, Tense::kGerund), c.gerund) << c.lemma;
  }
  EXPECT_EQ(Inflect("see", Tense::kPastParticiple), "seen");
  EXPECT_EQ(Inflect("look for", Tense::kPast), "looked for");
}

TEST(InflectTest, Plurals) {
  EXPECT_EQ(Pluralize("film"), "films");
  EXPECT_EQ(Pluralize("movie"), "movies");
  EXPECT_EQ(Pluralize("story"), "stories");
  EXPECT_EQ(Pluralize("watch"), "watches");
  EXPECT_EQ(Pluralize("child"), "children");
}

TEST(InflectTest, MatchCase) {
  EXPECT_EQ(MatchCase("Like", "enjoy"), "Enjoy");
  EXPECT_EQ(MatchCase("like", "enjoy"), "enjoy");
}

TEST(NegateTest, DoSupport) {
  EXPECT_EQ(Negated("I like watching horror movies"),
            "I do not like watching horror movies");
  EXPECT_EQ(Negated("She likes comedies."), "She does not like comedies.");
  EXPECT_EQ(Negated("We saw it."), "We did not see it.");
  EXPECT_EQ(Negated("Like it."), "Do not like it.");
}

TEST(NegateTest, AuxiliaryTakesNot) {
  EXPECT_EQ(Negated("I am looking for a thriller."), "I am not looking for a thriller.");
  EXPECT_EQ(Negated("I would like a comedy"), "I would not like a comedy");
  EXPECT_EQ(Negated("It is scary."), "It is not scary.");
  EXPECT_EQ(Negated("I have seen it."), "I have not seen it.");
}

TEST(NegateTest, InsertsExactlyOneNegation) {
  const std::string before = "I like watching horror movies";
  const std::string after = Negated(before);
  const auto count_not = [](const std::string& s) {
    const auto words = text::NormalizedWords(s);
    return std::count(words.begin(), words.end(), "not");
  };
  EXPECT_EQ(count_not(after), count_not(before) + 1);
}

TEST(NegateTest, AlreadyNegatedIsLeftAlone) {
  for (const char* s : {"I do not like it", "I don't like it", "I never liked it",
                        "I cannot watch it"}) {
    const auto tokens = Tagged(s);
    EXPECT_TRUE(IsNegated(tokens)) << s;
    const Negation n = Negate(tokens);
    EXPECT_TRUE(n.already_negated) << s;
    EXPECT_FALSE(n.edit.has_value()) << s;
  }
}

TEST(NegateTest, NoVerbThrows) {
  EXPECT_THROW(Negate(Tagged("Horror movies!")), NoVerbError);
}

TEST(NegateTest, HandWrittenTable) {
  std::ifstream in(testing::TestData("negation_table.tsv"));
  ASSERT_TRUE(in);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cols = text::Split(line, '\t');
    ASSERT_EQ(cols.size(), 3u) << line;
    EXPECT_EQ(Negated(cols[1]), cols[2]) << cols[0];
    ++rows;
  }
  EXPECT_EQ(rows, 150);
}

TEST(EditTest, ApplyAndOverlap) {
  const std::string s = "I like movies";
  EXPECT_EQ(ApplyEdits(s, {{EditKind::kSynonym, {7, 13}, "films"},
                           {EditKind::kSynonym, {2, 6}, "enjoy"}}),
            "I enjoy films");
  EXPECT_EQ(ApplyEdits(s, {{EditKind::kAppend, {13, 13}, " now."}}), "I like movies now.");
  EXPECT_THROW(ApplyEdits(s, {{EditKind::kSynonym, {2, 6}, "x"},
                              {EditKind::kSynonym, {4, 8}, "y"}}),
               std::exception);
}

TEST(EditTest, Detokenize) {
  EXPECT_EQ(Detokenize(Tokenize("Hi ,  I  like it !")), "Hi, I like it!");
}

}  // namespace
}  // namespace crsadv::lingo
