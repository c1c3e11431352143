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

#ifndef WIKINER_CORE_WIKI_HPP_
#define WIKINER_CORE_WIKI_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wikiner {

// Wikipedia title semantics: underscores become spaces, whitespace runs
// collapse, and the first character is upper-cased.
std::string CanonicalTitle(std::string_view title);

// Category title without the "Category:" namespace prefix, canonicalized.
std::string CanonicalCategory(std::string_view title);

struct Hyperlink {
  std::string target;  // canonical article title
  std::string anchor;  // surface string
  std::size_t begin = 0;  // character span in the source text
  std::size_t end = 0;

  bool operator==(const Hyperlink&) const = default;
};

// Recognizes [[Target]] and [[Target|anchor]]. Namespace links (Category:,
// File:, Image:) are skipped, "#Section" fragments are cut from the target,
// and a "[[" without a closing "]]" (or whose body contains a bracket) is
// literal text.
std::vector<Hyperlink> ExtractLinks(std::string_view wikitext);

// "[[Target|anchor]]"
std::string RenderLink(const Hyperlink& link);

struct Article {
  std::string id;  // canonical title
  std::string title;
  std::string text;
  std::vector<std::string> categories;  // canonical, first-occurrence order

  bool operator==(const Article&) const = default;
};

struct CategoryNode {
  std::set<std::string> children;
  std::set<std::string> members;  // article ids

  bool operator==(const CategoryNode&) const = default;
};

// Category hierarchy. Ordered containers keep every traversal and
// serialization deterministic. Cycles are allowed.
class CategoryGraph {
 public:
  void AddNode(const std::string& category);
  void AddEdge(const std::string& parent, const std::string& child);
  void AddMember(const std::string& category, const std::string& article_id);

  bool Contains(const std::string& category) const { return nodes_.count(category) > 0; }
  const CategoryNode& Node(const std::string& category) const;
  const std::map<std::string, CategoryNode>& nodes() const { return nodes_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const;
  std::size_t membership_count() const;

  bool operator==(const CategoryGraph&) const = default;

 private:
  std::map<std::string, CategoryNode> nodes_;
};

struct WikiDump {
  std::vector<Article> articles;  // input order
  CategoryGraph graph;

  const Article* Find(std::string_view id) const;
};

// Line-delimited JSON records:
//   {"kind": "article", "title": "...", "text": "..."}
//   {"kind": "category", "title": "...", "parent": "..."}   (parent optional)
// Blank lines are skipped and unknown fields ignored.
WikiDump ParseDump(std::istream& in);
WikiDump ParseDumpFile(const std::string& path);

// Ingested form, reloadable without re-parsing the dump.
void SaveArticles(const std::vector<Article>& articles, std::ostream& out);
std::vector<Article> LoadArticles(std::istream& in);
void SaveGraph(const CategoryGraph& graph, std::ostream& out);
CategoryGraph LoadGraph(std::istream& in);

// Wikitext reduced to plain text with link spans re-based onto the output.
struct PlainText {
  std::string text;
  std::vector<Hyperlink> links;
};

PlainText StripMarkup(std::string_view wikitext);

struct LinkSpan {
  std::size_t start = 0;  // token offsets, end exclusive
  std::size_t end = 0;
  std::string target;
  std::string anchor;

  bool operator==(const LinkSpan&) const = default;
};

struct TokenizedSentence {
  std::vector<std::string> tokens;
  std::vector<LinkSpan> links;
};

std::vector<std::string> Tokenize(std::string_view text);
std::vector<TokenizedSentence> SegmentText(const PlainText& plain);
std::vector<std::vector<std::string>> SplitSentences(std::string_view text);

}  // namespace wikiner

#endif  // WIKINER_CORE_WIKI_HPP_
