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

#include "core/alias_dict.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "core/error.hpp"
#include "core/strings.hpp"

namespace wikiner {

std::string NormalizeAlias(std::string_view surface) { return Join(Tokenize(surface), " "); }

void AliasDictionary::Add(const std::string& alias, const std::string& target,
                          std::uint64_t count) {
  if (alias.empty() || target.empty() || count == 0) return;
  entries_[alias][target] += count;
  max_tokens_ = std::max<std::size_t>(
      max_tokens_, 1 + static_cast<std::size_t>(std::count(alias.begin(), alias.end(), ' ')));
}

const AliasDictionary::Targets* AliasDictionary::Lookup(std::string_view alias) const {
  auto it = entries_.find(alias);
  return it == entries_.end() ? nullptr : &it->second;
}

const AliasDictionary::Targets* AliasDictionary::LookupSurface(std::string_view alias) const {
  if (const Targets* t = Lookup(alias)) return t;
  const std::string lower = AsciiLower(alias);
  return lower == alias ? nullptr : Lookup(lower);
}

void AliasDictionary::Save(std::ostream& out) const {
  for (const auto& [alias, targets] : entries_) {
    for (const auto& [target, count] : targets) {
      out << alias << '\t' << target << '\t' << count << '\n';
    }
  }
}

AliasDictionary AliasDictionary::Load(std::istream& in) {
  AliasDictionary dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = Split(line, '\t');
    std::uint64_t count = 0;
    bool ok = fields.size() == 3 && !fields[0].empty() && !fields[1].empty() && !fields[2].empty();
    if (ok) {
      for (char c : fields[2]) ok = ok && c >= '0' && c <= '9';
      if (ok) count = std::stoull(std::string(fields[2]));
    }
    if (!ok || count == 0) {
      Fail(ErrorCode::kParse, "line " + std::to_string(lineno) +
                                  ": expected alias<TAB>target<TAB>count");
    }
    dict.Add(std::string(fields[0]), std::string(fields[1]), count);
  }
  return dict;
}

void AliasDictionary::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
  Save(out);
}

AliasDictionary AliasDictionary::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return Load(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

namespace {

void AddWithLowercase(AliasDictionary& dict, std::string_view surface, const std::string& target) {
  const std::string alias = NormalizeAlias(surface);
  dict.Add(alias, target);
  const std::string lower = AsciiLower(alias);
  if (lower != alias) dict.Add(lower, target);
}

}  // namespace

AliasDictionary BuildAliasDictionary(std::span<const Article> articles) {
  AliasDictionary dict;
  for (const auto& article : articles) {
    AddWithLowercase(dict, article.title, article.id);
    for (const auto& link : ExtractLinks(article.text)) {
      AddWithLowercase(dict, link.anchor, link.target);
    }
  }
  return dict;
}

std::vector<Mention> FindMentions(std::span<const std::string> tokens,
                                  const AliasDictionary& dict) {
  std::vector<Mention> out;
  const std::size_t max_len = dict.max_alias_tokens();
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t longest = std::min(max_len, tokens.size() - i);
    bool matched = false;
    for (std::size_t n = longest; n >= 1; --n) {
      std::string key = tokens[i];
      for (std::size_t k = 1; k < n; ++k) {
        key += ' ';
        key += tokens[i + k];
      }
      if (const auto* targets = dict.LookupSurface(key)) {
        Mention m{i, i + n, {}};
        for (const auto& [target, _] : *targets) m.targets.push_back(target);
        out.push_back(std::move(m));
        i += n;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return out;
}

bool AnyTargetIn(const AliasDictionary::Targets& targets,
                 const std::set<std::string>& class_articles) {
  for (const auto& [target, _] : targets) {
    if (class_articles.count(target)) return true;
  }
  return false;
}

std::optional<SpanKind> ClassifyMention(std::span<const std::string> targets,
                                        const std::set<std::string>& class_articles,
                                        bool hyperlinked) {
  const bool any_in_class = std::any_of(targets.begin(), targets.end(), [&](const std::string& t) {
    return class_articles.count(t) > 0;
  });
  if (hyperlinked) return any_in_class ? SpanKind::kPositive : SpanKind::kNegative;
  if (any_in_class) return SpanKind::kUnknown;
  return std::nullopt;
}

}  // namespace wikiner
