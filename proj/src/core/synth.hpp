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

#ifndef WIKINER_CORE_SYNTH_HPP_
#define WIKINER_CORE_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "core/corpus.hpp"

namespace wikiner {

// Synthetic encyclopedia with a FOOD-like class, used by the end-to-end
// pipeline and the partial-annotation experiment.
//
// Every class draws names from its own pseudo-word pool, so the classes are
// separable by vocabulary. A share of the food names is also the name of a
// band, and links for that surface may point at either article. Linking
// follows the encyclopedia habit of leaving frequently mentioned common
// terms unlinked: link probability falls with an entity's mention
// frequency, calibrated so that `unlinked_fraction` of food mentions carry
// no link.
struct SynthConfig {
  std::uint64_t seed = 7;
  std::size_t sentences = 2000;       // dump sentences
  std::size_t gold_sentences = 400;   // fully annotated held-out sentences
  std::size_t legacy_sentences = 600; // CoNLL-style PER/LOC/ORG corpus
  std::size_t foods = 150;
  std::size_t people = 80;
  std::size_t places = 50;
  std::size_t organizations = 40;
  double ambiguous_fraction = 0.15;  // food names shared with a band
  double unlinked_fraction = 0.40;   // food mentions without a link
  double gazetteer_coverage = 0.6;   // legacy names listed for the aux tagger
  // Sentence mix. Homonym sentences talk about the bands; the rest only
  // mention PER/LOC/ORG. Gold sentences use food and homonym templates in
  // the same proportion.
  double food_share = 0.35;
  double homonym_share = 0.45;
};

struct SynthWorld {
  ClassInventory inventory;  // PER, LOC, ORG (legacy) + FOOD (new)
  std::string dump;          // line-delimited dump records
  std::vector<Sentence> gold;
  std::vector<Sentence> legacy_train;
  std::vector<Sentence> legacy_dev;
  std::vector<Sentence> legacy_test;
  std::string gazetteer;     // CLASS<TAB>name lines
  std::string start_category;

  // Realized rates over the dump's food mentions.
  std::size_t food_mentions = 0;
  std::size_t unlinked_food_mentions = 0;
  std::size_t ambiguous_aliases = 0;
};

SynthWorld GenerateWorld(const SynthConfig& config);

// dump.jsonl, gold.conll, legacy_{train,dev,test}.conll (plain CoNLL 2003,
// IOB1) and gazetteer.tsv under `dir`.
void WriteWorld(const SynthWorld& world, const std::string& dir);

}  // namespace wikiner

#endif  // WIKINER_CORE_SYNTH_HPP_
