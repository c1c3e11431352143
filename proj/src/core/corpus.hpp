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

#ifndef WIKINER_CORE_CORPUS_HPP_
#define WIKINER_CORE_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wikiner {

enum class ClassOrigin { kLegacy, kNew };

struct EntityClass {
  std::string name;
  ClassOrigin origin = ClassOrigin::kNew;

  bool operator==(const EntityClass&) const = default;
};

// Ordered set of entity classes and the BIO2 label set derived from it.
// Label 0 is O; class k owns labels 1 + 2k (B-) and 2 + 2k (I-).
class ClassInventory {
 public:
  static constexpr std::size_t kOutside = 0;

  ClassInventory() = default;
  explicit ClassInventory(std::vector<EntityClass> classes);

  // Comma-separated class names, legacy ones first.
  static ClassInventory FromLists(std::string_view legacy_csv,
                                  std::string_view new_csv);

  // "PER:legacy,FOOD:new" and back.
  std::string Serialize() const;
  static ClassInventory Parse(std::string_view text);

  const std::vector<EntityClass>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  std::size_t label_count() const { return 1 + 2 * classes_.size(); }

  std::optional<std::size_t> FindClass(std::string_view name) const;
  std::size_t ClassIndex(std::string_view name) const;  // throws if absent

  // (B-c, I-c) label indices.
  std::pair<std::size_t, std::size_t> LabelsForClass(std::string_view name) const;

  static std::size_t BeginLabel(std::size_t class_index) { return 1 + 2 * class_index; }
  static std::size_t InsideLabel(std::size_t class_index) { return 2 + 2 * class_index; }
  static bool IsBegin(std::size_t label) { return label != kOutside && label % 2 == 1; }
  static bool IsInside(std::size_t label) { return label != kOutside && label % 2 == 0; }
  static std::size_t ClassOfLabel(std::size_t label) { return (label - 1) / 2; }

  std::string LabelName(std::size_t label) const;
  std::optional<std::size_t> FindLabel(std::string_view name) const;

  bool operator==(const ClassInventory&) const = default;

 private:
  std::vector<EntityClass> classes_;
};

// Per-label 0/1 weights. All ones: fully supervised. All zeros: unknown
// mention. Ones exactly on B-c/I-c of a class subset: negative for those
// classes (target 0 there, O unconstrained).
using SupervisionMask = std::vector<std::uint8_t>;

enum class SupervisionKind { kFull, kUnknown, kNegative };

SupervisionMask FullMask(const ClassInventory& inv);
SupervisionMask UnknownMask(const ClassInventory& inv);
SupervisionMask NegativeMask(const ClassInventory& inv,
                             std::span<const std::size_t> class_indices);

// Throws if the mask is not one of the three representable shapes.
SupervisionKind KindOf(const SupervisionMask& mask, const ClassInventory& inv);
std::vector<std::size_t> NegativeClasses(const SupervisionMask& mask);

// File codes: "+", "-", "!CLS[,CLS...]".
std::string FormatSupervision(const SupervisionMask& mask, const ClassInventory& inv);
SupervisionMask ParseSupervision(std::string_view code, const ClassInventory& inv);

struct Token {
  std::string text;
  std::size_t gold_label = ClassInventory::kOutside;
  SupervisionMask supervision;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string source_id;

  std::vector<std::size_t> Labels() const;
  std::vector<std::string> Texts() const;

  bool operator==(const Sentence&) const = default;
};

bool IsValidBio(std::span<const std::size_t> labels);

// Orphan I-c (not preceded by B-c or I-c) becomes B-c. Identity on valid
// sequences. Also converts IOB1 input to BIO2.
std::vector<std::size_t> RepairBio(std::span<const std::size_t> labels);

// Throws kInvalidArgument describing the first violated invariant.
void ValidateSentence(const Sentence& sentence, const ClassInventory& inv);

struct EntitySpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::size_t class_index = 0;

  auto operator<=>(const EntitySpan&) const = default;
};

// Spans of a BIO2 sequence. Orphan I- tokens open a new span.
std::vector<EntitySpan> ExtractSpans(std::span<const std::size_t> labels);

enum class SpanKind { kPositive, kNegative, kUnknown };

struct SpanAnnotation {
  std::size_t start = 0;
  std::size_t end = 0;
  SpanKind kind = SpanKind::kUnknown;
  // Exactly one class for kPositive, at least one for kNegative, empty for
  // kUnknown.
  std::vector<std::size_t> classes;

  static SpanAnnotation Positive(std::size_t start, std::size_t end, std::size_t cls) {
    return {start, end, SpanKind::kPositive, {cls}};
  }
  static SpanAnnotation Negative(std::size_t start, std::size_t end,
                                 std::vector<std::size_t> classes) {
    return {start, end, SpanKind::kNegative, std::move(classes)};
  }
  static SpanAnnotation Unknown(std::size_t start, std::size_t end) {
    return {start, end, SpanKind::kUnknown, {}};
  }

  bool operator==(const SpanAnnotation&) const = default;
};

struct LabeledSequence {
  std::vector<std::size_t> labels;
  std::vector<SupervisionMask> masks;
};

LabeledSequence SpansToLabels(std::size_t length,
                              std::span<const SpanAnnotation> spans,
                              const ClassInventory& inv);

// Builds a sentence from token texts and span annotations.
Sentence MakeSentence(std::vector<std::string> texts,
                      std::span<const SpanAnnotation> spans,
                      const ClassInventory& inv, std::string source_id = {});

// Extended CoNLL. Also accepts plain CoNLL 2003 lines (first column token,
// last column label, IOB1 or BIO2), read as fully supervised.
std::vector<Sentence> ReadConll(std::istream& in, const ClassInventory& inv);
void WriteConll(std::span<const Sentence> sentences, std::ostream& out,
                const ClassInventory& inv);

std::vector<Sentence> ReadConllFile(const std::string& path, const ClassInventory& inv);
void WriteConllFile(std::span<const Sentence> sentences, const std::string& path,
                    const ClassInventory& inv);

}  // namespace wikiner

#endif  // WIKINER_CORE_CORPUS_HPP_
