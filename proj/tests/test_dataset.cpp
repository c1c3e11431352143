// Copyright 2026 The wikiner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/synth.hpp"
#include "test_util.hpp"

using namespace wikiner;
using wikiner::testing::FoodInventory;

namespace {

Article MakeArticle(const std::string& title, const std::string& text) {
  return {CanonicalTitle(title), title, text, {}};
}

std::vector<Article> FarmArticles() {
  return {MakeArticle("Cow", "A cow is an animal."), MakeArticle("Bear", "Bears are big."),
          MakeArticle("Salt", "Salt is a mineral."), MakeArticle("Tomato", "A fruit."),
          MakeArticle("Tomato (musician)", "A singer."),
          MakeArticle("Farm",
                      "The [[Cow|cow]] licked salt near a [[Bear|bear]]. "
                      "[[Tomato (musician)|Tomato]] sang for John Smith. "
                      "[[Bear|Bears]] sleep. Nothing links here.")};
}

BuildConfig FarmConfig() {
  BuildConfig config;
  config.inventory = FoodInventory();
  config.class_name = "FOOD";
  config.class_articles = {"Cow", "Salt", "Tomato"};
  return config;
}

const Sentence* FindSource(const std::vector<Sentence>& sentences, const std::string& id) {
  for (const auto& s : sentences) {
    if (s.source_id == id) return &s;
  }
  return nullptr;
}

class ThrowingTagger : public AuxiliaryTagger {
 public:
  std::vector<TaggedSpan> Tag(std::span<const std::string>) const override {
    throw std::runtime_error("model file missing");
  }
};

class FixedTagger : public AuxiliaryTagger {
 public:
  explicit FixedTagger(TaggedSpan span) : span_(std::move(span)) {}
  std::vector<TaggedSpan> Tag(std::span<const std::string> tokens) const override {
    if (span_.end > tokens.size()) return {};
    return {span_};
  }

 private:
  TaggedSpan span_;
};

std::vector<Sentence> NumberedSentences(std::size_t n, const std::string& prefix) {
  std::vector<Sentence> out;
  const auto inv = FoodInventory();
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(MakeSentence({"w" + std::to_string(i)}, {}, inv, prefix + std::to_string(i)));
  }
  return out;
}

std::multiset<std::string> Ids(const std::vector<Sentence>& sentences) {
  std::multiset<std::string> out;
  for (const auto& s : sentences) out.insert(s.source_id);
  return out;
}

}  // namespace

TEST_CASE("wiki corpus from links") {
  const auto articles = FarmArticles();
  const auto dict = BuildAliasDictionary(articles);
  const auto config = FarmConfig();
  const auto inv = config.inventory;
  const auto corpus = BuildWikiCorpus(articles, dict, config);

  // "The cow licked salt near a bear ."
  const Sentence* first = FindSource(corpus.sentences, "Farm#0");
  REQUIRE(first != nullptr);
  REQUIRE(first->Texts() == std::vector<std::string>{"The", "cow", "licked", "salt", "near", "a",
                                                     "bear", "."});
  CHECK(first->tokens[1].gold_label == ClassInventory::BeginLabel(2));
  CHECK(KindOf(first->tokens[1].supervision, inv) == SupervisionKind::kFull);
  CHECK(KindOf(first->tokens[3].supervision, inv) == SupervisionKind::kUnknown);
  // bear links outside the class and shares no alias with it: plain O.
  CHECK(first->tokens[6].gold_label == ClassInventory::kOutside);
  CHECK(KindOf(first->tokens[6].supervision, inv) == SupervisionKind::kFull);

  // The musician shares the alias Tomato with a class article.
  const Sentence* second = FindSource(corpus.sentences, "Farm#1");
  REQUIRE(second != nullptr);
  CHECK(second->tokens[0].gold_label == ClassInventory::kOutside);
  CHECK(KindOf(second->tokens[0].supervision, inv) == SupervisionKind::kNegative);
  CHECK(NegativeClasses(second->tokens[0].supervision) == std::vector<std::size_t>{2});

  // Only outside links, or no links at all.
  CHECK(FindSource(corpus.sentences, "Farm#2") == nullptr);
  CHECK(FindSource(corpus.sentences, "Farm#3") == nullptr);

  CHECK(corpus.stats == CorpusStats{1, 1, 1, 1, 2});
  for (const auto& s : corpus.sentences) ValidateSentence(s, inv);
}

TEST_CASE("aux tagger spans become negatives for new classes") {
  const auto articles = FarmArticles();
  const auto dict = BuildAliasDictionary(articles);
  auto config = FarmConfig();
  std::istringstream names("PER\tJohn Smith\n# comment\nLOC\tTomato\n");
  const auto gazetteer = GazetteerTagger::Load(names);
  config.aux_tagger = &gazetteer;
  const auto corpus = BuildWikiCorpus(articles, dict, config);
  const Sentence* second = FindSource(corpus.sentences, "Farm#1");
  REQUIRE(second != nullptr);
  const auto texts = second->Texts();
  const auto john = std::find(texts.begin(), texts.end(), "John") - texts.begin();
  for (auto t = john; t < john + 2; ++t) {
    CHECK(KindOf(second->tokens[t].supervision, config.inventory) == SupervisionKind::kNegative);
    CHECK(second->tokens[t].gold_label == ClassInventory::kOutside);
  }
  // The link span keeps its own annotation.
  CHECK(NegativeClasses(second->tokens[0].supervision) == std::vector<std::size_t>{2});
  CHECK(corpus.stats.non_entities == 2);
}

TEST_CASE("aux tagger failures") {
  const auto articles = FarmArticles();
  const auto dict = BuildAliasDictionary(articles);
  auto config = FarmConfig();
  ThrowingTagger throwing;
  config.aux_tagger = &throwing;
  try {
    BuildWikiCorpus(articles, dict, config);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kExternal);
  }
  FixedTagger new_label({0, 1, "FOOD"});
  config.aux_tagger = &new_label;
  try {
    BuildWikiCorpus(articles, dict, config);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kExternal);
  }
  FixedTagger out_of_range({3, 2, "PER"});
  config.aux_tagger = &out_of_range;
  CHECK_THROWS_AS(BuildWikiCorpus(articles, dict, config), Error);
}

TEST_CASE("gazetteer parse errors") {
  std::istringstream bad("PER\tJohn\nno tab here\n");
  CHECK_THROWS_WITH_AS(GazetteerTagger::Load(bad), doctest::Contains("line 2"), Error);
}

TEST_CASE("stats reconcile with annotations") {
  SynthConfig synth;
  synth.sentences = 300;
  synth.gold_sentences = 20;
  synth.legacy_sentences = 50;
  const auto world = GenerateWorld(synth);
  std::istringstream dump_in(world.dump);
  const auto dump = ParseDump(dump_in);
  std::set<std::string> foods;
  std::vector<Article> articles;
  for (const auto& a : dump.articles) {
    articles.push_back(a);
    if (std::find(a.categories.begin(), a.categories.end(), "Food and drink") != a.categories.end() ||
        std::find(a.categories.begin(), a.categories.end(), "Fruits") != a.categories.end() ||
        std::find(a.categories.begin(), a.categories.end(), "Vegetables") != a.categories.end()) {
      foods.insert(a.id);
    }
  }
  REQUIRE_FALSE(foods.empty());
  const auto dict = BuildAliasDictionary(articles);
  BuildConfig config;
  config.inventory = world.inventory;
  config.class_name = "FOOD";
  config.class_articles = foods;
  std::istringstream names(world.gazetteer);
  const auto gazetteer = GazetteerTagger::Load(names);
  config.aux_tagger = &gazetteer;
  const auto corpus = BuildWikiCorpus(articles, dict, config);
  REQUIRE(corpus.annotations.size() == corpus.sentences.size());

  CorpusStats counted;
  std::set<std::string> entities;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    for (const auto& span : corpus.annotations[i]) {
      if (span.kind == SpanKind::kPositive) ++counted.positive_entities;
      if (span.kind == SpanKind::kNegative) ++counted.non_entities;
      if (span.kind == SpanKind::kUnknown) ++counted.excluded_mentions;
      if (span.kind == SpanKind::kPositive) {
        entities.insert(corpus.sentences[i].Texts()[span.start]);
      }
    }
    ValidateSentence(corpus.sentences[i], config.inventory);
  }
  counted.distinct_entities = corpus.stats.distinct_entities;
  counted.sentences = corpus.sentences.size();
  CHECK(counted == corpus.stats);
  CHECK(corpus.stats.distinct_entities <= foods.size());
  CHECK(corpus.stats.positive_entities > 0);
  CHECK(corpus.stats.excluded_mentions > 0);

  const auto table = FormatStatsTable("FOOD", corpus.stats);
  CHECK(table.find("Pos. Entities") != std::string::npos);
  CHECK(table.find("Excl. Mentions") != std::string::npos);
  CHECK(table.find(std::to_string(corpus.stats.sentences)) != std::string::npos);
}

TEST_CASE("masking a legacy corpus") {
  const auto inv = FoodInventory();
  AliasDictionary dict;
  dict.Add("salt", "Salt");
  dict.Add("Smith", "Smith (band)");
  std::istringstream names("LOC\tParis\n");
  const auto gazetteer = GazetteerTagger::Load(names);

  std::vector<Sentence> legacy = {MakeSentence({"Smith", "put", "salt", "in", "Paris", "."},
                                               std::vector<SpanAnnotation>{SpanAnnotation::Positive(0, 1, 0)},
                                               inv, "l0")};
  const auto masked = MaskLegacyCorpus(legacy, dict, inv, {"Salt"}, &gazetteer);
  REQUIRE(masked.size() == 1);
  const auto& s = masked[0];
  CHECK(s.Labels() == legacy[0].Labels());
  CHECK(s.tokens[0].gold_label == ClassInventory::BeginLabel(0));
  CHECK(KindOf(s.tokens[0].supervision, inv) == SupervisionKind::kFull);
  CHECK(KindOf(s.tokens[1].supervision, inv) == SupervisionKind::kFull);
  CHECK(KindOf(s.tokens[2].supervision, inv) == SupervisionKind::kUnknown);
  CHECK(KindOf(s.tokens[4].supervision, inv) == SupervisionKind::kNegative);
  CHECK(NegativeClasses(s.tokens[4].supervision) == std::vector<std::size_t>{2});
}

TEST_CASE("masking never changes labels") {
  const auto inv = FoodInventory();
  AliasDictionary dict;
  dict.Add("a", "A");
  dict.Add("a b", "B");
  Rng rng(12);
  std::istringstream names("PER\tb\n");
  const auto gazetteer = GazetteerTagger::Load(names);
  std::vector<Sentence> sentences;
  for (int i = 0; i < 200; ++i) {
    const auto n = 1 + rng.Below(8);
    const auto labels = wikiner::testing::RandomBio(rng, n, 2);
    Sentence s;
    for (std::size_t t = 0; t < n; ++t) {
      s.tokens.push_back({rng.Below(2) ? "a" : "b", labels[t], FullMask(inv)});
    }
    sentences.push_back(s);
  }
  const auto masked = MaskLegacyCorpus(sentences, dict, inv, {"A", "B"}, &gazetteer);
  REQUIRE(masked.size() == sentences.size());
  for (std::size_t i = 0; i < masked.size(); ++i) {
    CHECK(masked[i].Labels() == sentences[i].Labels());
    CHECK(masked[i].Texts() == sentences[i].Texts());
    for (std::size_t t = 0; t < masked[i].tokens.size(); ++t) {
      if (sentences[i].tokens[t].gold_label != ClassInventory::kOutside) {
        CHECK(masked[i].tokens[t].supervision == FullMask(inv));
      }
    }
    ValidateSentence(masked[i], inv);
  }
}

TEST_CASE("split and merge") {
  BuildConfig config;
  config.inventory = FoodInventory();
  const auto wiki = NumberedSentences(10, "w");
  const auto lt = NumberedSentences(3, "lt");
  const auto ld = NumberedSentences(2, "ld");
  const auto le = NumberedSentences(2, "le");

  const auto splits = SplitAndMerge(wiki, lt, ld, le, config);
  CHECK(splits.train.size() == 8 + 3);
  CHECK(splits.dev.size() == 1 + 2);
  CHECK(splits.test.size() == 1 + 2);

  // Partition of the wiki part, legacy parts stay with their split.
  std::multiset<std::string> all;
  for (const auto* part : {&splits.train, &splits.dev, &splits.test}) {
    const auto ids = Ids(*part);
    all.insert(ids.begin(), ids.end());
  }
  auto expected = Ids(wiki);
  for (const auto* part : {&lt, &ld, &le}) {
    const auto ids = Ids(*part);
    expected.insert(ids.begin(), ids.end());
  }
  CHECK(all == expected);
  for (const auto& id : Ids(lt)) CHECK(Ids(splits.train).count(id) == 1);
  for (const auto& id : Ids(ld)) CHECK(Ids(splits.dev).count(id) == 1);
  for (const auto& id : Ids(le)) CHECK(Ids(splits.test).count(id) == 1);

  const auto again = SplitAndMerge(wiki, lt, ld, le, config);
  CHECK(again.train == splits.train);
  CHECK(again.dev == splits.dev);
  CHECK(again.test == splits.test);

  const auto big = NumberedSentences(200, "w");
  config.seed = 7;
  const auto a = SplitAndMerge(big, {}, {}, {}, config);
  config.seed = 8;
  const auto b = SplitAndMerge(big, {}, {}, {}, config);
  CHECK(a.train != b.train);

  CHECK_THROWS_AS(SplitAndMerge(NumberedSentences(9, "w"), {}, {}, {}, config), Error);
  config.train_ratio = 0.7;
  CHECK_THROWS_AS(SplitAndMerge(wiki, {}, {}, {}, config), Error);
}

TEST_CASE("holdout") {
  const auto inv = FoodInventory();
  std::vector<Sentence> sentences;
  for (int i = 0; i < 20; ++i) {
    sentences.push_back(MakeSentence({"salt", "x"}, std::vector<SpanAnnotation>{SpanAnnotation::Unknown(0, 1)},
                                     inv, "s" + std::to_string(i)));
  }
  const auto h = HoldoutForGold(sentences, 5, 3, inv);
  CHECK(h.held_out.size() == 5);
  CHECK(h.remainder.size() == 15);
  for (const auto& s : h.held_out) {
    for (const auto& t : s.tokens) {
      CHECK(t.gold_label == ClassInventory::kOutside);
      CHECK(t.supervision == FullMask(inv));
    }
  }
  auto ids = Ids(h.held_out);
  const auto rest = Ids(h.remainder);
  ids.insert(rest.begin(), rest.end());
  CHECK(ids == Ids(sentences));
  CHECK(Ids(HoldoutForGold(sentences, 5, 3, inv).held_out) == Ids(h.held_out));
  CHECK_THROWS_AS(HoldoutForGold(sentences, 21, 3, inv), Error);
  CHECK(HoldoutForGold(sentences, 0, 3, inv).remainder.size() == 20);
}
