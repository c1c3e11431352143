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

#ifndef WIKINER_CORE_EVAL_HPP_
#define WIKINER_CORE_EVAL_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "core/alias_dict.hpp"
#include "core/corpus.hpp"
#include "core/tagger.hpp"

namespace wikiner {

struct SpanCounts {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;

  // Zero denominators give 0, as conlleval does.
  double precision() const;
  double recall() const;
  double f1() const;

  SpanCounts& operator+=(const SpanCounts& other);
  bool operator==(const SpanCounts&) const = default;
};

struct EvalReport {
  std::vector<std::string> class_names;
  std::vector<SpanCounts> per_class;  // parallel to class_names
  SpanCounts micro;

  const SpanCounts& ForClass(const std::string& name) const;
  std::string ToJson() const;

  bool operator==(const EvalReport&) const = default;
};

// Exact (class, start, end) span matching. Predicted sequences are repaired
// to BIO2 before span extraction.
EvalReport ScoreLabelSequences(std::span<const std::vector<std::size_t>> gold,
                               std::span<const std::vector<std::size_t>> predicted,
                               const ClassInventory& inv);

std::vector<std::vector<std::size_t>> PredictLabels(const TaggerModel& model,
                                                    std::span<const Sentence> sentences);

// Scores a model against gold labels; supervision masks play no role.
EvalReport Evaluate(const TaggerModel& model, std::span<const Sentence> test_set);

// Labels every dictionary mention with a candidate in `class_articles` as
// `class_name` and scores against the gold set.
EvalReport BaselineAnnotate(std::span<const Sentence> gold_set, const AliasDictionary& dict,
                            const std::set<std::string>& class_articles,
                            const ClassInventory& inv, const std::string& class_name);

struct NamedReport {
  std::string model;
  std::string dataset;
  EvalReport report;
};

// One row per model, a P/R/F1 block per dataset (micro averages, or
// `only_class` when given). The best F1 in each block carries a '*'.
std::string ReportTable(std::span<const NamedReport> reports,
                        const std::optional<std::string>& only_class = std::nullopt);

}  // namespace wikiner

#endif  // WIKINER_CORE_EVAL_HPP_
