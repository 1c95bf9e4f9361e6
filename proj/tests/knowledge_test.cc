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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "test_paths.h"

namespace crsadv::knowledge {
namespace {

const KnowledgeBase& Toy() {
  static const KnowledgeBase kb = KnowledgeBase::Load(testing::Bundled("toy_kb.json"));
  return kb;
}

TEST(KnowledgeTest, BundledKbCoversBothDomains) {
  const KnowledgeBase& kb = Toy();
  EXPECT_GE(kb.genres().size(), 6u);
  bool movies = false;
  bool books = false;
  for (const Item& item : kb.items()) {
    movies |= item.domain == Domain::kMovie;
    books |= item.domain == Domain::kBook;
  }
  EXPECT_TRUE(movies);
  EXPECT_TRUE(books);
  EXPECT_TRUE(std::is_sorted(kb.items().begin(), kb.items().end(),
                             [](const Item& a, const Item& b) { return a.id < b.id; }));
}

TEST(KnowledgeTest, LooksUpItemsAndGenres) {
  const KnowledgeBase& kb = Toy();
  const Item* item = kb.FindByTitle("the last exorcism");
  ASSERT_NE(item, nullptr);
  EXPECT_EQ(item->id, ItemId("101"));
  EXPECT_EQ(kb.GenreOf(ItemId("101")), "horror");
  EXPECT_EQ(kb.FindGenre("horror")->description,
            "The horror genre is a genre that has been growing on me overtime.");
  EXPECT_EQ(kb.FindItem(ItemId("999999")), nullptr);
  EXPECT_THROW(kb.GetItem(ItemId("999999")), UnknownItemError);
  EXPECT_THROW(kb.GenreOf(ItemId("999999")), UnknownItemError);
}

TEST(KnowledgeTest, GenresMentionedAreWholeWords) {
  const KnowledgeBase& kb = Toy();
  EXPECT_EQ(kb.GenresMentionedIn("I love Horror and some ACTION"),
            (std::set<std::string>{"action", "horror"}));
  EXPECT_TRUE(kb.GenresMentionedIn("actionable dramatic").empty());
}

TEST(KnowledgeTest, InvalidKbListsEveryOffender) {
  try {
    KnowledgeBase::Load(testing::TestData("bad_kb.json"));
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("western"), std::string::npos) << msg;
    EXPECT_NE(msg.find("member 9"), std::string::npos) << msg;
  }
  EXPECT_THROW(KnowledgeBase::Load("/nonexistent/kb.json"), DataError);
}

// Independent oracle: sorted eligible names indexed by a draw from the
// same seed.
std::string ExpectedContrast(const KnowledgeBase& kb, const std::set<std::string>& seen,
                             const std::string& target, std::uint64_t seed) {
  std::vector<std::string> eligible;
  for (const auto& [name, genre] : kb.genres()) {
    if (name != target && !seen.count(name)) eligible.push_back(name);
  }
  std::sort(eligible.begin(), eligible.end());
  Rng rng(seed);
  return eligible[rng.Uniform(eligible.size())];
}

TEST(KnowledgeTest, ContrastGenreMatchesOracleAndExcludesConversation) {
  const KnowledgeBase& kb = Toy();
  const std::set<std::string> seen = {"action", "comedy"};
  std::map<std::string, int> counts;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const std::string& g = kb.ContrastGenre(seen, "horror", rng);
    EXPECT_EQ(g, ExpectedContrast(kb, seen, "horror", seed)) << seed;
    EXPECT_FALSE(seen.count(g));
    EXPECT_NE(g, "horror");
    ++counts[g];
  }
  // Every eligible genre is reachable.
  EXPECT_EQ(counts.size(), kb.genres().size() - 3);
}

TEST(KnowledgeTest, ContrastGenreRespectsDomain) {
  const KnowledgeBase& kb = Toy();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const std::string& g = kb.ContrastGenre({}, "horror", rng, Domain::kBook);
    const Genre* genre = kb.FindGenre(g);
    ASSERT_NE(genre, nullptr);
    EXPECT_TRUE(std::any_of(genre->members.begin(), genre->members.end(), [&](const ItemId& m) {
      return kb.GetItem(m).domain == Domain::kBook;
    })) << g;
  }
}

TEST(KnowledgeTest, NoEligibleGenre) {
  const KnowledgeBase kb = KnowledgeBase::Load(testing::TestData("small_kb.json"));
  Rng rng(1);
  EXPECT_THROW(kb.ContrastGenre({"action", "comedy"}, "horror", rng), NoEligibleGenreError);
  EXPECT_EQ(kb.ContrastGenre({"action"}, "horror", rng), "comedy");
}

TEST(KnowledgeTest, SampleItem) {
  const KnowledgeBase kb = KnowledgeBase::Load(testing::TestData("small_kb.json"));
  Rng rng(1);
  EXPECT_EQ(kb.SampleItem("action", {}, rng).id, ItemId("2"));
  EXPECT_THROW(kb.SampleItem("action", {ItemId("2")}, rng), EmptyGenreError);
  EXPECT_THROW(kb.SampleItem("action", {}, rng, Domain::kBook), EmptyGenreError);
  EXPECT_THROW(kb.SampleItem("western", {}, rng), EmptyGenreError);

  const KnowledgeBase& toy = Toy();
  const std::set<ItemId> exclude = {ItemId("101"), ItemId("102")};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng r(seed);
    const Item& item = toy.SampleItem("horror", exclude, r, Domain::kMovie);
    EXPECT_FALSE(exclude.count(item.id));
    EXPECT_EQ(item.domain, Domain::kMovie);
    EXPECT_NE(std::find(item.genres.begin(), item.genres.end(), "horror"), item.genres.end());
  }
}

TEST(KnowledgeTest, JsonRoundTrip) {
  const KnowledgeBase& kb = Toy();
  const KnowledgeBase copy = KnowledgeBase::FromJson(kb.ToJson());
  EXPECT_EQ(copy.ToJson(), kb.ToJson());
  EXPECT_EQ(copy.items().size(), kb.items().size());
}

}  // namespace
}  // namespace crsadv::knowledge
