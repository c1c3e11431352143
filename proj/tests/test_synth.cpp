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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/synth.hpp"
#include "core/wiki.hpp"
#include "test_util.hpp"

using namespace wikiner;

namespace {

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("default world rates") {
  const auto world = GenerateWorld(SynthConfig{});
  REQUIRE(world.food_mentions > 0);
  const double unlinked =
      static_cast<double>(world.unlinked_food_mentions) / static_cast<double>(world.food_mentions);
  CHECK(std::abs(unlinked - 0.40) < 0.03);
  CHECK(world.ambiguous_aliases == static_cast<std::size_t>(std::llround(150 * 0.15)));
  CHECK(world.gold.size() == 400);
  CHECK(world.legacy_train.size() + world.legacy_dev.size() + world.legacy_test.size() == 600);
  CHECK(world.start_category == "Food and drink");
  CHECK(world.inventory.class_count() == 4);

  std::istringstream dump_in(world.dump);
  const auto dump = ParseDump(dump_in);
  CHECK(dump.graph.Contains("Food and drink"));
  std::size_t sentences = 0;
  for (const auto& a : dump.articles) sentences += SegmentText(StripMarkup(a.text)).size();
  CHECK(sentences >= 2000);
  for (const auto& s : world.gold) ValidateSentence(s, world.inventory);
}

TEST_CASE("worlds are reproducible") {
  SynthConfig config;
  config.sentences = 200;
  config.gold_sentences = 20;
  config.legacy_sentences = 40;
  const auto a = GenerateWorld(config);
  const auto b = GenerateWorld(config);
  CHECK(a.dump == b.dump);
  CHECK(a.gold == b.gold);
  CHECK(a.gazetteer == b.gazetteer);
  config.seed = 8;
  CHECK(GenerateWorld(config).dump != a.dump);

  wikiner::testing::TempDir one, two;
  WriteWorld(a, one.path().string());
  WriteWorld(b, two.path().string());
  for (const char* name : {"dump.jsonl", "gold.conll", "legacy_train.conll", "legacy_dev.conll",
                           "legacy_test.conll", "gazetteer.tsv", "inventory.txt"}) {
    CAPTURE(name);
    REQUIRE(std::filesystem::exists(one.File(name)));
    CHECK(Slurp(one.File(name)) == Slurp(two.File(name)));
  }
  // The legacy files read back as fully supervised PER/LOC/ORG data.
  const auto legacy = ReadConllFile(one.File("legacy_train.conll"), a.inventory);
  CHECK(legacy.size() == a.legacy_train.size());
  CHECK(ReadConllFile(one.File("gold.conll"), a.inventory) == a.gold);
}

TEST_CASE("config validation") {
  SynthConfig config;
  config.unlinked_fraction = 1.5;
  CHECK_THROWS_AS(GenerateWorld(config), Error);
  config = {};
  config.ambiguous_fraction = 0.0;
  CHECK_THROWS_AS(GenerateWorld(config), Error);
  config = {};
  config.sentences = 0;
  CHECK_THROWS_AS(GenerateWorld(config), Error);
}
