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

#ifndef WIKINER_CORE_DATASET_HPP_
#define WIKINER_CORE_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "core/alias_dict.hpp"
#include "core/corpus.hpp"
#include "core/wiki.hpp"

namespace wikiner {

struct TaggedSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;  // a legacy class name, e.g. PER

  bool operator==(const TaggedSpan&) const = default;
};

// Finds entities of the legacy classes in raw token sequences. Those spans
// become negative supervision for the new classes.
class AuxiliaryTagger {
 public:
  virtual ~AuxiliaryTagger() = default;
  virtual std::vector<TaggedSpan> Tag(std::span<const std::string> tokens) const = 0;
};

// Name lists per class, one "CLASS<TAB>name" per line, matched greedily
// longest-first like the alias dictionary.
class GazetteerTagger : public AuxiliaryTagger {
 public:
  void Add(const std::string& label, std::string_view name);
  std::vector<TaggedSpan> Tag(std::span<const std::string> tokens) const override;

  static GazetteerTagger Load(std::istream& in);
  static GazetteerTagger LoadFile(const std::string& path);

 private:
  AliasDictionary names_;  // normalized name -> {label: 1}
};

struct BuildConfig {
  ClassInventory inventory;
  std::string class_name;                // the new class C
  std::set<std::string> class_articles;  // curator export
  std::uint64_t seed = 7;
  double train_ratio = 0.8;
  double dev_ratio = 0.1;
  double test_ratio = 0.1;
  const AuxiliaryTagger* aux_tagger = nullptr;  // optional

  void Validate() const;
};

struct CorpusStats {
  std::size_t positive_entities = 0;
  std::size_t non_entities = 0;
  std::size_t excluded_mentions = 0;
  std::size_t distinct_entities = 0;
  std::size_t sentences = 0;

  bool operator==(const CorpusStats&) const = default;
};

// Fixed-width table with the columns Pos. Entities, Non-Entities,
// Excl. Mentions, Entities, Sentences.
std::string FormatStatsTable(const std::string& class_name, const CorpusStats& stats);

struct WikiCorpus {
  std::vector<Sentence> sentences;
  std::vector<std::vector<SpanAnnotation>> annotations;  // parallel to sentences
  CorpusStats stats;
};

// Keeps sentences with at least one hyperlink into C or sharing an alias
// with C. Such links become positive/negative spans; remaining dictionary
// mentions into C become unknown spans; aux-tagger spans become negative
// for the new classes.
WikiCorpus BuildWikiCorpus(std::span<const Article> articles, const AliasDictionary& dict,
                           const BuildConfig& config);

// Masks a fully supervised corpus without touching its gold labels:
// dictionary mentions into C within O regions become unknown, aux-tagger
// spans within O regions become negative for the new classes.
std::vector<Sentence> MaskLegacyCorpus(std::vector<Sentence> sentences,
                                       const AliasDictionary& dict, const ClassInventory& inv,
                                       const std::set<std::string>& class_articles,
                                       const AuxiliaryTagger* aux_tagger);

struct Splits {
  std::vector<Sentence> train;
  std::vector<Sentence> dev;
  std::vector<Sentence> test;
};

// Shuffles the wiki sentences, cuts them train/dev/test by ratio, appends
// each legacy split and shuffles each merged split again. One Rng seeded
// with config.seed drives all four shuffles in that order.
Splits SplitAndMerge(std::vector<Sentence> wiki, std::vector<Sentence> legacy_train,
                     std::vector<Sentence> legacy_dev, std::vector<Sentence> legacy_test,
                     const BuildConfig& config);

struct Holdout {
  std::vector<Sentence> held_out;  // labels reset to O, supervision '+'
  std::vector<Sentence> remainder;
};

Holdout HoldoutForGold(std::vector<Sentence> sentences, std::size_t n, std::uint64_t seed,
                       const ClassInventory& inv);

}  // namespace wikiner

#endif  // WIKINER_CORE_DATASET_HPP_
