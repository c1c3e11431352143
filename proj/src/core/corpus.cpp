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

#include "core/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/strings.hpp"

namespace wikiner {

namespace {

void ValidateClassName(std::string_view name) {
  if (name.empty()) Fail(ErrorCode::kInvalidArgument, "empty class name");
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || u <= 0x20 || c == ',' || c == ':' || c == '!') {
      Fail(ErrorCode::kInvalidArgument,
           "invalid class name '" + std::string(name) + "'");
    }
  }
  if (name == "O") Fail(ErrorCode::kInvalidArgument, "class name 'O' is reserved");
}

std::vector<std::string_view> SplitCsv(std::string_view csv) {
  std::vector<std::string_view> out;
  csv = Trim(csv);
  if (csv.empty()) return out;
  for (auto part : Split(csv, ',')) out.push_back(Trim(part));
  return out;
}

}  // namespace

ClassInventory::ClassInventory(std::vector<EntityClass> classes)
    : classes_(std::move(classes)) {
  std::set<std::string_view> seen;
  for (const auto& c : classes_) {
    ValidateClassName(c.name);
    if (!seen.insert(c.name).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate class '" + c.name + "'");
    }
  }
}

ClassInventory ClassInventory::FromLists(std::string_view legacy_csv,
                                         std::string_view new_csv) {
  std::vector<EntityClass> classes;
  for (auto name : SplitCsv(legacy_csv)) {
    classes.push_back({std::string(name), ClassOrigin::kLegacy});
  }
  for (auto name : SplitCsv(new_csv)) {
    classes.push_back({std::string(name), ClassOrigin::kNew});
  }
  return ClassInventory(std::move(classes));
}

std::string ClassInventory::Serialize() const {
  std::string out;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (i) out += ',';
    out += classes_[i].name;
    out += classes_[i].origin == ClassOrigin::kLegacy ? ":legacy" : ":new";
  }
  return out;
}

ClassInventory ClassInventory::Parse(std::string_view text) {
  std::vector<EntityClass> classes;
  for (auto item : SplitCsv(text)) {
    const auto colon = item.find(':');
    EntityClass c;
    c.name = std::string(item.substr(0, colon));
    if (colon != std::string_view::npos) {
      const auto origin = item.substr(colon + 1);
      if (origin == "legacy") {
        c.origin = ClassOrigin::kLegacy;
      } else if (origin == "new") {
        c.origin = ClassOrigin::kNew;
      } else {
        Fail(ErrorCode::kParse, "unknown class origin '" + std::string(origin) + "'");
      }
    }
    classes.push_back(std::move(c));
  }
  return ClassInventory(std::move(classes));
}

std::optional<std::size_t> ClassInventory::FindClass(std::string_view name) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t ClassInventory::ClassIndex(std::string_view name) const {
  auto idx = FindClass(name);
  if (!idx) Fail(ErrorCode::kNotFound, "unknown class '" + std::string(name) + "'");
  return *idx;
}

std::pair<std::size_t, std::size_t> ClassInventory::LabelsForClass(
    std::string_view name) const {
  const std::size_t k = ClassIndex(name);
  return {BeginLabel(k), InsideLabel(k)};
}

std::string ClassInventory::LabelName(std::size_t label) const {
  if (label == kOutside) return "O";
  if (label >= label_count()) {
    Fail(ErrorCode::kInvalidArgument, "label index " + std::to_string(label) + " out of range");
  }
  return (IsBegin(label) ? "B-" : "I-") + classes_[ClassOfLabel(label)].name;
}

std::optional<std::size_t> ClassInventory::FindLabel(std::string_view name) const {
  if (name == "O") return kOutside;
  if (name.size() < 3 || name[1] != '-') return std::nullopt;
  auto cls = FindClass(name.substr(2));
  if (!cls) return std::nullopt;
  if (name[0] == 'B') return BeginLabel(*cls);
  if (name[0] == 'I') return InsideLabel(*cls);
  return std::nullopt;
}

SupervisionMask FullMask(const ClassInventory& inv) {
  return SupervisionMask(inv.label_count(), 1);
}

SupervisionMask UnknownMask(const ClassInventory& inv) {
  return SupervisionMask(inv.label_count(), 0);
}

SupervisionMask NegativeMask(const ClassInventory& inv,
                             std::span<const std::size_t> class_indices) {
  if (class_indices.empty()) {
    Fail(ErrorCode::kInvalidArgument, "negative supervision needs at least one class");
  }
  SupervisionMask mask(inv.label_count(), 0);
  for (std::size_t k : class_indices) {
    if (k >= inv.class_count()) {
      Fail(ErrorCode::kInvalidArgument, "class index " + std::to_string(k) + " out of range");
    }
    mask[ClassInventory::BeginLabel(k)] = 1;
    mask[ClassInventory::InsideLabel(k)] = 1;
  }
  return mask;
}

SupervisionKind KindOf(const SupervisionMask& mask, const ClassInventory& inv) {
  if (mask.size() != inv.label_count()) {
    Fail(ErrorCode::kInvalidArgument,
         "mask has " + std::to_string(mask.size()) + " entries, expected " +
             std::to_string(inv.label_count()));
  }
  std::size_t ones = 0;
  for (auto v : mask) {
    if (v > 1) Fail(ErrorCode::kInvalidArgument, "mask entries must be 0 or 1");
    ones += v;
  }
  if (ones == mask.size()) return SupervisionKind::kFull;
  if (ones == 0) return SupervisionKind::kUnknown;
  if (mask[ClassInventory::kOutside] != 0) {
    Fail(ErrorCode::kInvalidArgument, "negative mask must not weight the O label");
  }
  for (std::size_t k = 0; k < inv.class_count(); ++k) {
    if (mask[ClassInventory::BeginLabel(k)] != mask[ClassInventory::InsideLabel(k)]) {
      Fail(ErrorCode::kInvalidArgument,
           "negative mask must cover B- and I- of class " + inv.classes()[k].name);
    }
  }
  return SupervisionKind::kNegative;
}

std::vector<std::size_t> NegativeClasses(const SupervisionMask& mask) {
  std::vector<std::size_t> out;
  for (std::size_t label = 1; label + 1 < mask.size(); label += 2) {
    if (mask[label]) out.push_back(ClassInventory::ClassOfLabel(label));
  }
  return out;
}

std::string FormatSupervision(const SupervisionMask& mask, const ClassInventory& inv) {
  switch (KindOf(mask, inv)) {
    case SupervisionKind::kFull:
      return "+";
    case SupervisionKind::kUnknown:
      return "-";
    case SupervisionKind::kNegative:
      break;
  }
  std::string out = "!";
  bool first = true;
  for (std::size_t k : NegativeClasses(mask)) {
    if (!first) out += ',';
    out += inv.classes()[k].name;
    first = false;
  }
  return out;
}

SupervisionMask ParseSupervision(std::string_view code, const ClassInventory& inv) {
  if (code == "+") return FullMask(inv);
  if (code == "-") return UnknownMask(inv);
  if (code.size() < 2 || code[0] != '!') {
    Fail(ErrorCode::kParse, "invalid supervision code '" + std::string(code) + "'");
  }
  std::vector<std::size_t> classes;
  for (auto name : Split(code.substr(1), ',')) {
    auto k = inv.FindClass(name);
    if (!k) {
      Fail(ErrorCode::kParse, "unknown class '" + std::string(name) + "' in supervision code");
    }
    classes.push_back(*k);
  }
  return NegativeMask(inv, classes);
}

std::vector<std::size_t> Sentence::Labels() const {
  std::vector<std::size_t> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.gold_label);
  return out;
}

std::vector<std::string> Sentence::Texts() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

bool IsValidBio(std::span<const std::size_t> labels) {
  std::size_t prev = ClassInventory::kOutside;
  for (std::size_t label : labels) {
    if (ClassInventory::IsInside(label)) {
      if (prev == ClassInventory::kOutside ||
          ClassInventory::ClassOfLabel(prev) != ClassInventory::ClassOfLabel(label)) {
        return false;
      }
    }
    prev = label;
  }
  return true;
}

std::vector<std::size_t> RepairBio(std::span<const std::size_t> labels) {
  std::vector<std::size_t> out(labels.begin(), labels.end());
  std::size_t prev = ClassInventory::kOutside;
  for (auto& label : out) {
    if (ClassInventory::IsInside(label) &&
        (prev == ClassInventory::kOutside ||
         ClassInventory::ClassOfLabel(prev) != ClassInventory::ClassOfLabel(label))) {
      label = ClassInventory::BeginLabel(ClassInventory::ClassOfLabel(label));
    }
    prev = label;
  }
  return out;
}

void ValidateSentence(const Sentence& sentence, const ClassInventory& inv) {
  if (sentence.tokens.empty()) Fail(ErrorCode::kInvalidArgument, "empty sentence");
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& t = sentence.tokens[i];
    const std::string where = "token " + std::to_string(i) + " ('" + t.text + "')";
    if (t.text.empty()) Fail(ErrorCode::kInvalidArgument, "empty text at token " + std::to_string(i));
    for (char c : t.text) {
      if (IsSpace(c)) Fail(ErrorCode::kInvalidArgument, "whitespace inside " + where);
    }
    if (t.gold_label >= inv.label_count()) {
      Fail(ErrorCode::kInvalidArgument, "label out of range at " + where);
    }
    const SupervisionKind kind = KindOf(t.supervision, inv);
    if (kind != SupervisionKind::kFull && t.gold_label != ClassInventory::kOutside) {
      Fail(ErrorCode::kInvalidArgument, "partial supervision on entity label at " + where);
    }
  }
  const auto labels = sentence.Labels();
  if (!IsValidBio(labels)) Fail(ErrorCode::kInvalidArgument, "invalid BIO2 label sequence");
}

std::vector<EntitySpan> ExtractSpans(std::span<const std::size_t> labels) {
  std::vector<EntitySpan> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t label = labels[i];
    if (label == ClassInventory::kOutside) continue;
    const std::size_t cls = ClassInventory::ClassOfLabel(label);
    const bool continues = ClassInventory::IsInside(label) && !out.empty() &&
                           out.back().end == i && out.back().class_index == cls;
    if (continues) {
      out.back().end = i + 1;
    } else {
      out.push_back({i, i + 1, cls});
    }
  }
  return out;
}

LabeledSequence SpansToLabels(std::size_t length, std::span<const SpanAnnotation> spans,
                              const ClassInventory& inv) {
  LabeledSequence seq;
  seq.labels.assign(length, ClassInventory::kOutside);
  seq.masks.assign(length, FullMask(inv));

  std::vector<const SpanAnnotation*> order;
  for (const auto& s : spans) {
    if (s.start >= s.end || s.end > length) {
      Fail(ErrorCode::kInvalidArgument,
           "span [" + std::to_string(s.start) + "," + std::to_string(s.end) +
               ") invalid for sentence of length " + std::to_string(length));
    }
    order.push_back(&s);
  }
  std::sort(order.begin(), order.end(),
            [](const SpanAnnotation* a, const SpanAnnotation* b) { return a->start < b->start; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i]->start < order[i - 1]->end) {
      Fail(ErrorCode::kInvalidArgument,
           "overlapping spans [" + std::to_string(order[i - 1]->start) + "," +
               std::to_string(order[i - 1]->end) + ") and [" +
               std::to_string(order[i]->start) + "," + std::to_string(order[i]->end) + ")");
    }
  }

  for (const SpanAnnotation* s : order) {
    switch (s->kind) {
      case SpanKind::kPositive: {
        if (s->classes.size() != 1 || s->classes[0] >= inv.class_count()) {
          Fail(ErrorCode::kInvalidArgument, "positive span needs exactly one known class");
        }
        const std::size_t k = s->classes[0];
        for (std::size_t i = s->start; i < s->end; ++i) {
          seq.labels[i] = i == s->start ? ClassInventory::BeginLabel(k)
                                        : ClassInventory::InsideLabel(k);
        }
        break;
      }
      case SpanKind::kNegative: {
        const auto mask = NegativeMask(inv, s->classes);
        for (std::size_t i = s->start; i < s->end; ++i) seq.masks[i] = mask;
        break;
      }
      case SpanKind::kUnknown:
        for (std::size_t i = s->start; i < s->end; ++i) seq.masks[i] = UnknownMask(inv);
        break;
    }
  }
  return seq;
}

Sentence MakeSentence(std::vector<std::string> texts, std::span<const SpanAnnotation> spans,
                      const ClassInventory& inv, std::string source_id) {
  auto seq = SpansToLabels(texts.size(), spans, inv);
  Sentence s;
  s.source_id = std::move(source_id);
  s.tokens.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    s.tokens.push_back({std::move(texts[i]), seq.labels[i], std::move(seq.masks[i])});
  }
  return s;
}

namespace {

bool LooksLikeSupervision(std::string_view field) {
  return field == "+" || field == "-" || (field.size() > 1 && field[0] == '!');
}

[[noreturn]] void FailAtLine(std::size_t line, const std::string& message) {
  Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": " + message);
}

}  // namespace

std::vector<Sentence> ReadConll(std::istream& in, const ClassInventory& inv) {
  std::vector<Sentence> out;
  Sentence current;
  bool plain = false;
  std::size_t first_line = 0;
  std::string pending_source;

  auto flush = [&]() {
    if (current.tokens.empty()) return;
    if (plain) {
      const auto repaired = RepairBio(current.Labels());
      for (std::size_t i = 0; i < repaired.size(); ++i) current.tokens[i].gold_label = repaired[i];
    } else if (!IsValidBio(current.Labels())) {
      Fail(ErrorCode::kParse, "sentence " + std::to_string(out.size() + 1) + " (line " +
                                  std::to_string(first_line) + "): invalid BIO2 sequence");
    }
    out.push_back(std::move(current));
    current = Sentence{};
    plain = false;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) {
      flush();
      continue;
    }
    if (line.rfind("# ", 0) == 0) {
      constexpr std::string_view kSource = "# source=";
      if (line.rfind(kSource, 0) == 0) {
        if (!current.tokens.empty()) FailAtLine(lineno, "source comment inside a sentence");
        pending_source = line.substr(kSource.size());
      }
      continue;
    }

    std::string_view text, label_name;
    SupervisionMask mask;
    const auto tabs = Split(line, '\t');
    if (tabs.size() == 3 && LooksLikeSupervision(tabs[2])) {
      text = tabs[0];
      label_name = tabs[1];
      try {
        mask = ParseSupervision(tabs[2], inv);
      } catch (const Error& e) {
        FailAtLine(lineno, e.what());
      }
    } else {
      const auto fields = SplitWhitespace(line);
      if (fields.size() < 2) FailAtLine(lineno, "expected at least two columns");
      text = fields.front();
      label_name = fields.back();
      mask = FullMask(inv);
      plain = true;
    }
    if (text == "-DOCSTART-") continue;
    if (text.empty()) FailAtLine(lineno, "empty token");
    for (char c : text) {
      if (IsSpace(c)) FailAtLine(lineno, "whitespace inside token");
    }
    auto label = inv.FindLabel(label_name);
    if (!label) FailAtLine(lineno, "unknown label '" + std::string(label_name) + "'");
    if (*label != ClassInventory::kOutside && KindOf(mask, inv) != SupervisionKind::kFull) {
      FailAtLine(lineno, "partial supervision on an entity label");
    }
    if (current.tokens.empty()) {
      first_line = lineno;
      current.source_id = std::move(pending_source);
      pending_source.clear();
    }
    current.tokens.push_back({std::string(text), *label, std::move(mask)});
  }
  flush();
  return out;
}

void WriteConll(std::span<const Sentence> sentences, std::ostream& out,
                const ClassInventory& inv) {
  for (const auto& s : sentences) {
    ValidateSentence(s, inv);
    if (!s.source_id.empty()) out << "# source=" << s.source_id << '\n';
    for (const auto& t : s.tokens) {
      out << t.text << '\t' << inv.LabelName(t.gold_label) << '\t'
          << FormatSupervision(t.supervision, inv) << '\n';
    }
    out << '\n';
  }
}

std::vector<Sentence> ReadConllFile(const std::string& path, const ClassInventory& inv) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return ReadConll(in, inv);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void WriteConllFile(std::span<const Sentence> sentences, const std::string& path,
                    const ClassInventory& inv) {
  std::ostringstream buffer;
  WriteConll(sentences, buffer, inv);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << buffer.str();
  if (!out) Fail(ErrorCode::kIo, "write failed for '" + path + "'");
}

}  // namespace wikiner
