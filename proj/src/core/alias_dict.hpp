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

#ifndef WIKINER_CORE_ALIAS_DICT_HPP_
#define WIKINER_CORE_ALIAS_DICT_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/corpus.hpp"
#include "core/wiki.hpp"

namespace wikiner {

// Aliases are stored tokenized and space-joined so that matching a token
// slice is a single map lookup.
std::string NormalizeAlias(std::string_view surface);

class AliasDictionary {
 public:
  using Targets = std::map<std::string, std::uint64_t>;  // target id -> link count

  // `alias` must already be normalized.
  void Add(const std::string& alias, const std::string& target, std::uint64_t count = 1);

  const Targets* Lookup(std::string_view alias) const;
  // Exact case first, then the lower-cased form.
  const Targets* LookupSurface(std::string_view alias) const;

  const std::map<std::string, Targets, std::less<>>& entries() const { return entries_; }
  std::size_t alias_count() const { return entries_.size(); }
  std::size_t max_alias_tokens() const { return max_tokens_; }
  bool empty() const { return entries_.empty(); }

  // Sorted "alias<TAB>target<TAB>count" lines.
  void Save(std::ostream& out) const;
  static AliasDictionary Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  static AliasDictionary LoadFile(const std::string& path);

  bool operator==(const AliasDictionary& other) const { return entries_ == other.entries_; }

 private:
  std::map<std::string, Targets, std::less<>> entries_;
  std::size_t max_tokens_ = 0;
};

// Every hyperlink adds anchor -> target, every article adds title -> itself,
// and each alias is also added lower-cased.
AliasDictionary BuildAliasDictionary(std::span<const Article> articles);

struct Mention {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::string> targets;  // sorted

  bool operator==(const Mention&) const = default;
};

// Greedy left-to-right longest match on token boundaries.
std::vector<Mention> FindMentions(std::span<const std::string> tokens,
                                  const AliasDictionary& dict);

// Hyperlinked mention (targets = {link target}): positive if the target is a
// class article, negative otherwise. Dictionary-only mention: unknown if any
// candidate is a class article, otherwise not annotated.
std::optional<SpanKind> ClassifyMention(std::span<const std::string> targets,
                                        const std::set<std::string>& class_articles,
                                        bool hyperlinked);

bool AnyTargetIn(const AliasDictionary::Targets& targets,
                 const std::set<std::string>& class_articles);

}  // namespace wikiner

#endif  // WIKINER_CORE_ALIAS_DICT_HPP_
