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

#include "core/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "core/error.hpp"
#include "json.hpp"

namespace wikiner {

double SpanCounts::precision() const {
  const std::size_t d = true_positives + false_positives;
  return d == 0 ? 0.0 : static_cast<double>(true_positives) / static_cast<double>(d);
}

double SpanCounts::recall() const {
  const std::size_t d = true_positives + false_negatives;
  return d == 0 ? 0.0 : static_cast<double>(true_positives) / static_cast<double>(d);
}

double SpanCounts::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

SpanCounts& SpanCounts::operator+=(const SpanCounts& other) {
  true_positives += other.true_positives;
  false_positives += other.false_positives;
  false_negatives += other.false_negatives;
  return *this;
}

const SpanCounts& EvalReport::ForClass(const std::string& name) const {
  for (std::size_t i = 0; i < class_names.size(); ++i) {
    if (class_names[i] == name) return per_class[i];
  }
  Fail(ErrorCode::kNotFound, "report has no class '" + name + "'");
}

std::string EvalReport::ToJson() const {
  auto block = [](const SpanCounts& c) {
    return nlohmann::ordered_json{{"precision", c.precision()},
                                  {"recall", c.recall()},
                                  {"f1", c.f1()},
                                  {"tp", c.true_positives},
                                  {"fp", c.false_positives},
                                  {"fn", c.false_negatives}};
  };
  nlohmann::ordered_json out;
  out["micro"] = block(micro);
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < class_names.size(); ++i) classes[class_names[i]] = block(per_class[i]);
  out["classes"] = std::move(classes);
  return out.dump();
}

EvalReport ScoreLabelSequences(std::span<const std::vector<std::size_t>> gold,
                               std::span<const std::vector<std::size_t>> predicted,
                               const ClassInventory& inv) {
  if (gold.size() != predicted.size()) {
    Fail(ErrorCode::kInvalidArgument, "gold and predicted sentence counts differ");
  }
  EvalReport report;
  for (const auto& c : inv.classes()) report.class_names.push_back(c.name);
  report.per_class.assign(inv.class_count(), {});
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != predicted[s].size()) {
      Fail(ErrorCode::kInvalidArgument, "length mismatch in sentence " + std::to_string(s));
    }
    const auto gold_spans = ExtractSpans(gold[s]);
    const auto pred_spans = ExtractSpans(RepairBio(predicted[s]));
    // Both lists are sorted by start and non-overlapping.
    std::size_t i = 0, j = 0;
    while (i < gold_spans.size() || j < pred_spans.size()) {
      if (j == pred_spans.size() || (i < gold_spans.size() && gold_spans[i] < pred_spans[j])) {
        ++report.per_class[gold_spans[i++].class_index].false_negatives;
      } else if (i == gold_spans.size() || pred_spans[j] < gold_spans[i]) {
        ++report.per_class[pred_spans[j++].class_index].false_positives;
      } else {
        ++report.per_class[gold_spans[i].class_index].true_positives;
        ++i;
        ++j;
      }
    }
  }
  for (const auto& c : report.per_class) report.micro += c;
  return report;
}

std::vector<std::vector<std::size_t>> PredictLabels(const TaggerModel& model,
                                                    std::span<const Sentence> sentences) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) {
    out.push_back(DecodeLabels(model.Forward(s.Texts()), model.head()));
  }
  return out;
}

EvalReport Evaluate(const TaggerModel& model, std::span<const Sentence> test_set) {
  std::vector<std::vector<std::size_t>> gold;
  gold.reserve(test_set.size());
  for (const auto& s : test_set) gold.push_back(s.Labels());
  return ScoreLabelSequences(gold, PredictLabels(model, test_set), model.inventory());
}

EvalReport BaselineAnnotate(std::span<const Sentence> gold_set, const AliasDictionary& dict,
                            const std::set<std::string>& class_articles,
                            const ClassInventory& inv, const std::string& class_name) {
  const std::size_t cls = inv.ClassIndex(class_name);
  std::vector<std::vector<std::size_t>> gold, predicted;
  for (const auto& s : gold_set) {
    gold.push_back(s.Labels());
    std::vector<std::size_t> labels(s.tokens.size(), ClassInventory::kOutside);
    const auto texts = s.Texts();
    for (const auto& m : FindMentions(texts, dict)) {
      const bool in_class = std::any_of(m.targets.begin(), m.targets.end(), [&](const auto& t) {
        return class_articles.count(t) > 0;
      });
      if (!in_class) continue;
      for (std::size_t t = m.start; t < m.end; ++t) {
        labels[t] = t == m.start ? ClassInventory::BeginLabel(cls) : ClassInventory::InsideLabel(cls);
      }
    }
    predicted.push_back(std::move(labels));
  }
  return ScoreLabelSequences(gold, predicted, inv);
}

std::string ReportTable(std::span<const NamedReport> reports,
                        const std::optional<std::string>& only_class) {
  if (reports.empty()) Fail(ErrorCode::kInvalidArgument, "no reports to tabulate");
  std::vector<std::string> models, datasets;
  for (const auto& r : reports) {
    if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
      datasets.push_back(r.dataset);
    }
  }
  auto lookup = [&](const std::string& model, const std::string& dataset) -> const SpanCounts* {
    for (const auto& r : reports) {
      if (r.model == model && r.dataset == dataset) {
        return only_class ? &r.report.ForClass(*only_class) : &r.report.micro;
      }
    }
    return nullptr;
  };

  std::size_t name_width = 5;
  for (const auto& m : models) name_width = std::max(name_width, m.size());
  constexpr int kCell = 7;
  constexpr int kBlock = 3 * kCell;

  std::ostringstream out;
  char buf[64];
  auto pad = [&](const std::string& s, std::size_t width) {
    out << s << std::string(width > s.size() ? width - s.size() : 0, ' ');
  };
  pad("Dataset", name_width);
  for (const auto& d : datasets) {
    out << " | ";
    pad(d.size() > kBlock ? d.substr(0, kBlock) : d, kBlock);
  }
  out << '\n';
  pad("Model", name_width);
  for (std::size_t i = 0; i < datasets.size(); ++i) {
    out << " | ";
    std::snprintf(buf, sizeof buf, "%-7s%-7s%-7s", "P", "R", "F1");
    out << buf;
  }
  out << '\n';
  out << std::string(name_width + datasets.size() * (kBlock + 3), '-') << '\n';

  std::vector<double> best(datasets.size(), -1.0);
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (const auto& m : models) {
      if (const SpanCounts* c = lookup(m, datasets[d])) best[d] = std::max(best[d], c->f1());
    }
  }
  for (const auto& m : models) {
    pad(m, name_width);
    for (std::size_t d = 0; d < datasets.size(); ++d) {
      out << " | ";
      const SpanCounts* c = lookup(m, datasets[d]);
      if (!c) {
        std::snprintf(buf, sizeof buf, "%-7s%-7s%-7s", "-", "-", "-");
      } else {
        const bool is_best = c->f1() == best[d];
        std::snprintf(buf, sizeof buf, "%-7.2f%-7.2f%.2f%-3s", c->precision(), c->recall(), c->f1(),
                      is_best ? "*" : "");
      }
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace wikiner
