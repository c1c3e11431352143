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

#include "core/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/strings.hpp"

namespace wikiner {

void GazetteerTagger::Add(const std::string& label, std::string_view name) {
  names_.Add(NormalizeAlias(name), label);
}

std::vector<TaggedSpan> GazetteerTagger::Tag(std::span<const std::string> tokens) const {
  std::vector<TaggedSpan> out;
  for (const auto& m : FindMentions(tokens, names_)) {
    // A name listed under several classes takes the first label.
    out.push_back({m.start, m.end, m.targets.front()});
  }
  return out;
}

GazetteerTagger GazetteerTagger::Load(std::istream& in) {
  GazetteerTagger tagger;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || Trim(line.substr(tab + 1)).empty()) {
      Fail(ErrorCode::kParse, "gazetteer line " + std::to_string(lineno) +
                                  ": expected CLASS<TAB>name");
    }
    tagger.Add(line.substr(0, tab), line.substr(tab + 1));
  }
  return tagger;
}

GazetteerTagger GazetteerTagger::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  return Load(in);
}

void BuildConfig::Validate() const {
  if (!(train_ratio > 0 && dev_ratio > 0 && test_ratio > 0)) {
    Fail(ErrorCode::kInvalidArgument, "split ratios must be positive");
  }
  if (std::abs(train_ratio + dev_ratio + test_ratio - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidArgument, "split ratios must sum to 1");
  }
  if (!class_name.empty()) inventory.ClassIndex(class_name);
}

std::string FormatStatsTable(const std::string& class_name, const CorpusStats& stats) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "Entity Type" << std::right << std::setw(15)
      << "Pos. Entities" << std::setw(14) << "Non-Entities" << std::setw(16) << "Excl. Mentions"
      << std::setw(10) << "Entities" << std::setw(11) << "Sentences" << '\n';
  out << std::left << std::setw(12) << class_name << std::right << std::setw(15)
      << stats.positive_entities << std::setw(14) << stats.non_entities << std::setw(16)
      << stats.excluded_mentions << std::setw(10) << stats.distinct_entities << std::setw(11)
      << stats.sentences << '\n';
  return out.str();
}

namespace {

std::vector<std::size_t> NewClassIndices(const ClassInventory& inv) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < inv.class_count(); ++k) {
    if (inv.classes()[k].origin == ClassOrigin::kNew) out.push_back(k);
  }
  return out;
}

std::string JoinSlice(std::span<const std::string> tokens, std::size_t start, std::size_t end) {
  std::string out;
  for (std::size_t i = start; i < end; ++i) {
    if (i > start) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Dictionary mentions into C inside maximal runs of free tokens. Matched
// tokens are marked taken.
std::vector<SpanAnnotation> UnknownSpans(std::span<const std::string> tokens,
                                         std::vector<bool>& taken, const AliasDictionary& dict,
                                         const std::set<std::string>& class_articles) {
  std::vector<SpanAnnotation> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (taken[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < tokens.size() && !taken[j]) ++j;
    for (const auto& m : FindMentions(tokens.subspan(i, j - i), dict)) {
      if (ClassifyMention(m.targets, class_articles, false) == SpanKind::kUnknown) {
        out.push_back(SpanAnnotation::Unknown(i + m.start, i + m.end));
      }
    }
    i = j;
  }
  for (const auto& s : out) {
    for (std::size_t t = s.start; t < s.end; ++t) taken[t] = true;
  }
  return out;
}

std::vector<SpanAnnotation> AuxNegativeSpans(std::span<const std::string> tokens,
                                             std::vector<bool>& taken,
                                             const AuxiliaryTagger& aux,
                                             const ClassInventory& inv,
                                             const std::vector<std::size_t>& new_classes) {
  std::vector<SpanAnnotation> out;
  std::vector<TaggedSpan> tagged;
  try {
    tagged = aux.Tag(tokens);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    Fail(ErrorCode::kExternal, std::string("auxiliary tagger failed: ") + e.what());
  }
  for (const auto& span : tagged) {
    if (span.start >= span.end || span.end > tokens.size()) {
      Fail(ErrorCode::kExternal, "auxiliary tagger returned an out-of-range span");
    }
    auto cls = inv.FindClass(span.label);
    if (!cls || inv.classes()[*cls].origin != ClassOrigin::kLegacy) {
      Fail(ErrorCode::kExternal,
           "auxiliary tagger returned label '" + span.label + "', not a legacy class");
    }
    if (new_classes.empty()) continue;
    bool free = true;
    for (std::size_t t = span.start; t < span.end; ++t) free = free && !taken[t];
    if (!free) continue;
    for (std::size_t t = span.start; t < span.end; ++t) taken[t] = true;
    out.push_back(SpanAnnotation::Negative(span.start, span.end, new_classes));
  }
  return out;
}

}  // namespace

WikiCorpus BuildWikiCorpus(std::span<const Article> articles, const AliasDictionary& dict,
                           const BuildConfig& config) {
  config.Validate();
  const ClassInventory& inv = config.inventory;
  const std::size_t cls = inv.ClassIndex(config.class_name);
  const auto new_classes = NewClassIndices(inv);

  std::vector<const Article*> ordered;
  for (const auto& a : articles) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(),
            [](const Article* a, const Article* b) { return a->id < b->id; });

  WikiCorpus corpus;
  std::set<std::string> entities;
  for (const Article* article : ordered) {
    const auto sentences = SegmentText(StripMarkup(article->text));
    for (std::size_t si = 0; si < sentences.size(); ++si) {
      const auto& ts = sentences[si];
      std::vector<bool> taken(ts.tokens.size(), false);
      std::vector<SpanAnnotation> spans;
      bool qualifies = false;
      for (const auto& link : ts.links) {
        for (std::size_t t = link.start; t < link.end; ++t) taken[t] = true;
        const bool in_class = config.class_articles.count(link.target) > 0;
        bool shares_alias = false;
        if (!in_class) {
          for (const std::string& surface :
               {JoinSlice(ts.tokens, link.start, link.end), NormalizeAlias(link.anchor)}) {
            const auto* targets = dict.LookupSurface(surface);
            shares_alias = shares_alias || (targets && AnyTargetIn(*targets, config.class_articles));
          }
        }
        if (!in_class && !shares_alias) continue;
        qualifies = true;
        const std::string target[] = {link.target};
        if (ClassifyMention(target, config.class_articles, true) == SpanKind::kPositive) {
          spans.push_back(SpanAnnotation::Positive(link.start, link.end, cls));
          entities.insert(link.target);
          ++corpus.stats.positive_entities;
        } else {
          spans.push_back(SpanAnnotation::Negative(link.start, link.end, {cls}));
          ++corpus.stats.non_entities;
        }
      }
      if (!qualifies) continue;

      auto unknown = UnknownSpans(ts.tokens, taken, dict, config.class_articles);
      corpus.stats.excluded_mentions += unknown.size();
      spans.insert(spans.end(), unknown.begin(), unknown.end());
      if (config.aux_tagger) {
        auto negative = AuxNegativeSpans(ts.tokens, taken, *config.aux_tagger, inv, new_classes);
        corpus.stats.non_entities += negative.size();
        spans.insert(spans.end(), negative.begin(), negative.end());
      }
      corpus.sentences.push_back(
          MakeSentence(ts.tokens, spans, inv, article->id + "#" + std::to_string(si)));
      corpus.annotations.push_back(std::move(spans));
    }
  }
  corpus.stats.distinct_entities = entities.size();
  corpus.stats.sentences = corpus.sentences.size();
  return corpus;
}

std::vector<Sentence> MaskLegacyCorpus(std::vector<Sentence> sentences,
                                       const AliasDictionary& dict, const ClassInventory& inv,
                                       const std::set<std::string>& class_articles,
                                       const AuxiliaryTagger* aux_tagger) {
  const auto new_classes = NewClassIndices(inv);
  for (auto& s : sentences) {
    ValidateSentence(s, inv);
    const auto texts = s.Texts();
    std::vector<bool> taken(texts.size());
    for (std::size_t t = 0; t < texts.size(); ++t) {
      taken[t] = s.tokens[t].gold_label != ClassInventory::kOutside ||
                 KindOf(s.tokens[t].supervision, inv) != SupervisionKind::kFull;
    }
    for (const auto& span : UnknownSpans(texts, taken, dict, class_articles)) {
      for (std::size_t t = span.start; t < span.end; ++t) s.tokens[t].supervision = UnknownMask(inv);
    }
    if (aux_tagger) {
      for (const auto& span : AuxNegativeSpans(texts, taken, *aux_tagger, inv, new_classes)) {
        const auto mask = NegativeMask(inv, span.classes);
        for (std::size_t t = span.start; t < span.end; ++t) s.tokens[t].supervision = mask;
      }
    }
  }
  return sentences;
}

Splits SplitAndMerge(std::vector<Sentence> wiki, std::vector<Sentence> legacy_train,
                     std::vector<Sentence> legacy_dev, std::vector<Sentence> legacy_test,
                     const BuildConfig& config) {
  config.Validate();
  if (wiki.size() < 10) {
    Fail(ErrorCode::kInvalidArgument,
         "need at least 10 wiki sentences to split, got " + std::to_string(wiki.size()));
  }
  Rng rng(config.seed);
  rng.Shuffle(wiki);
  const std::size_t n = wiki.size();
  const auto part = [n](double ratio) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio + 1e-9));
  };
  const std::size_t n_dev = part(config.dev_ratio);
  const std::size_t n_test = part(config.test_ratio);
  const std::size_t n_train = n - n_dev - n_test;

  Splits out;
  auto take = [&](std::vector<Sentence>& dst, std::size_t from, std::size_t count,
                  std::vector<Sentence>& legacy) {
    dst.assign(std::make_move_iterator(wiki.begin() + static_cast<std::ptrdiff_t>(from)),
               std::make_move_iterator(wiki.begin() + static_cast<std::ptrdiff_t>(from + count)));
    dst.insert(dst.end(), std::make_move_iterator(legacy.begin()),
               std::make_move_iterator(legacy.end()));
  };
  take(out.train, 0, n_train, legacy_train);
  take(out.dev, n_train, n_dev, legacy_dev);
  take(out.test, n_train + n_dev, n_test, legacy_test);
  rng.Shuffle(out.train);
  rng.Shuffle(out.dev);
  rng.Shuffle(out.test);
  return out;
}

Holdout HoldoutForGold(std::vector<Sentence> sentences, std::size_t n, std::uint64_t seed,
                       const ClassInventory& inv) {
  if (n > sentences.size()) {
    Fail(ErrorCode::kInvalidArgument, "cannot hold out " + std::to_string(n) + " of " +
                                          std::to_string(sentences.size()) + " sentences");
  }
  std::vector<std::size_t> order(sentences.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.Shuffle(order);
  std::vector<bool> held(sentences.size(), false);
  for (std::size_t i = 0; i < n; ++i) held[order[i]] = true;

  Holdout out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (held[i]) {
      for (auto& t : sentences[i].tokens) {
        t.gold_label = ClassInventory::kOutside;
        t.supervision = FullMask(inv);
      }
      out.held_out.push_back(std::move(sentences[i]));
    } else {
      out.remainder.push_back(std::move(sentences[i]));
    }
  }
  return out;
}

}  // namespace wikiner
