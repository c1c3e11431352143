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

#include "core/wiki.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "json.hpp"

namespace wikiner {

using nlohmann::json;

std::string CanonicalTitle(std::string_view title) {
  std::string out;
  bool pending_space = false;
  for (char c : title) {
    if (c == '_') c = ' ';
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') {
    out[0] = static_cast<char>(out[0] - 'a' + 'A');
  }
  return out;
}

namespace {

bool HasPrefixIgnoreCase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  return AsciiLower(s.substr(0, prefix.size())) == prefix;
}

bool IsNamespaceTarget(std::string_view target) {
  target = Trim(target);
  if (!target.empty() && target[0] == ':') target = Trim(target.substr(1));
  return HasPrefixIgnoreCase(target, "category:") || HasPrefixIgnoreCase(target, "file:") ||
         HasPrefixIgnoreCase(target, "image:");
}

// Body of a link starting at `pos` ("[["), or nullopt if the brackets are
// literal text.
struct LinkMatch {
  std::string_view body;
  std::size_t end;  // one past the closing "]]"
};

std::optional<LinkMatch> MatchLinkAt(std::string_view text, std::size_t pos) {
  const std::size_t close = text.find("]]", pos + 2);
  if (close == std::string_view::npos) return std::nullopt;
  const std::string_view body = text.substr(pos + 2, close - pos - 2);
  if (body.find_first_of("[]") != std::string_view::npos) return std::nullopt;
  return LinkMatch{body, close + 2};
}

struct ParsedBody {
  bool is_namespace = false;
  std::string target;
  std::string anchor;
};

ParsedBody ParseBody(std::string_view body) {
  ParsedBody out;
  const std::size_t pipe = body.find('|');
  std::string_view target_part = body.substr(0, pipe);
  std::string_view anchor_part =
      pipe == std::string_view::npos ? body : body.substr(pipe + 1);
  if (IsNamespaceTarget(target_part)) {
    out.is_namespace = true;
    return out;
  }
  const std::size_t hash = target_part.find('#');
  if (hash != std::string_view::npos) target_part = target_part.substr(0, hash);
  out.target = CanonicalTitle(target_part);
  out.anchor = std::string(Trim(anchor_part));
  return out;
}

}  // namespace

std::string CanonicalCategory(std::string_view title) {
  title = Trim(title);
  if (!title.empty() && title[0] == ':') title = Trim(title.substr(1));
  if (HasPrefixIgnoreCase(title, "category:")) title = title.substr(9);
  return CanonicalTitle(title);
}

std::vector<Hyperlink> ExtractLinks(std::string_view wikitext) {
  std::vector<Hyperlink> out;
  std::size_t pos = 0;
  while ((pos = wikitext.find("[[", pos)) != std::string_view::npos) {
    auto match = MatchLinkAt(wikitext, pos);
    if (!match) {
      pos += 1;
      continue;
    }
    ParsedBody body = ParseBody(match->body);
    if (!body.is_namespace && !body.target.empty() && !body.anchor.empty()) {
      out.push_back({std::move(body.target), std::move(body.anchor), pos, match->end});
    }
    pos = match->end;
  }
  return out;
}

std::string RenderLink(const Hyperlink& link) {
  return "[[" + link.target + "|" + link.anchor + "]]";
}

void CategoryGraph::AddNode(const std::string& category) { nodes_[category]; }

void CategoryGraph::AddEdge(const std::string& parent, const std::string& child) {
  nodes_[child];
  nodes_[parent].children.insert(child);
}

void CategoryGraph::AddMember(const std::string& category, const std::string& article_id) {
  nodes_[category].members.insert(article_id);
}

const CategoryNode& CategoryGraph::Node(const std::string& category) const {
  auto it = nodes_.find(category);
  if (it == nodes_.end()) Fail(ErrorCode::kNotFound, "unknown category '" + category + "'");
  return it->second;
}

std::size_t CategoryGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [_, node] : nodes_) n += node.children.size();
  return n;
}

std::size_t CategoryGraph::membership_count() const {
  std::size_t n = 0;
  for (const auto& [_, node] : nodes_) n += node.members.size();
  return n;
}

const Article* WikiDump::Find(std::string_view id) const {
  for (const auto& a : articles) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

namespace {

[[noreturn]] void FailAtLine(std::size_t line, const std::string& message) {
  Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": " + message);
}

std::string RequireString(const json& record, const char* field, std::size_t line) {
  auto it = record.find(field);
  if (it == record.end()) FailAtLine(line, std::string("missing field '") + field + "'");
  if (!it->is_string()) FailAtLine(line, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> CategoriesIn(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = text.find("[[", pos)) != std::string_view::npos) {
    auto match = MatchLinkAt(text, pos);
    if (!match) {
      pos += 1;
      continue;
    }
    std::string_view target = match->body.substr(0, match->body.find('|'));
    std::string_view trimmed = Trim(target);
    if (HasPrefixIgnoreCase(trimmed, "category:")) {
      std::string cat = CanonicalCategory(trimmed);
      if (!cat.empty() && std::find(out.begin(), out.end(), cat) == out.end()) {
        out.push_back(std::move(cat));
      }
    }
    pos = match->end;
  }
  return out;
}

}  // namespace

WikiDump ParseDump(std::istream& in) {
  WikiDump dump;
  std::set<std::string> titles;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      FailAtLine(lineno, std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) FailAtLine(lineno, "record must be a JSON object");
    const std::string kind = RequireString(record, "kind", lineno);
    if (kind == "article") {
      Article a;
      a.title = RequireString(record, "title", lineno);
      a.text = RequireString(record, "text", lineno);
      a.id = CanonicalTitle(a.title);
      if (a.id.empty()) FailAtLine(lineno, "empty article title");
      if (!titles.insert(a.id).second) {
        FailAtLine(lineno, "duplicate article title '" + a.id + "'");
      }
      a.categories = CategoriesIn(a.text);
      for (const auto& c : a.categories) dump.graph.AddMember(c, a.id);
      dump.articles.push_back(std::move(a));
    } else if (kind == "category") {
      const std::string title = CanonicalCategory(RequireString(record, "title", lineno));
      if (title.empty()) FailAtLine(lineno, "empty category title");
      dump.graph.AddNode(title);
      auto parent = record.find("parent");
      if (parent != record.end() && !parent->is_null()) {
        if (!parent->is_string()) FailAtLine(lineno, "field 'parent' must be a string");
        const std::string p = CanonicalCategory(parent->get<std::string>());
        if (p.empty()) FailAtLine(lineno, "empty parent category");
        dump.graph.AddEdge(p, title);
      }
    } else {
      FailAtLine(lineno, "unknown record kind '" + kind + "'");
    }
  }
  return dump;
}

WikiDump ParseDumpFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return ParseDump(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

namespace {

constexpr int kFormatVersion = 1;

void WriteHeader(std::ostream& out, const char* format) {
  out << json{{"format", format}, {"version", kFormatVersion}}.dump() << '\n';
}

void ReadHeader(std::istream& in, const char* format) {
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kParse, std::string("empty ") + format + " file");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::parse_error&) {
    Fail(ErrorCode::kParse, std::string("missing ") + format + " header");
  }
  if (header.value("format", "") != format) {
    Fail(ErrorCode::kParse, std::string("not a ") + format + " file");
  }
  if (header.value("version", 0) != kFormatVersion) {
    Fail(ErrorCode::kParse, std::string("unsupported ") + format + " version");
  }
}

}  // namespace

void SaveArticles(const std::vector<Article>& articles, std::ostream& out) {
  WriteHeader(out, "wikiner-articles");
  for (const auto& a : articles) {
    out << json{{"id", a.id}, {"title", a.title}, {"text", a.text}, {"categories", a.categories}}
               .dump()
        << '\n';
  }
}

std::vector<Article> LoadArticles(std::istream& in) {
  ReadHeader(in, "wikiner-articles");
  std::vector<Article> out;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      const json r = json::parse(line);
      Article a;
      a.id = r.at("id").get<std::string>();
      a.title = r.at("title").get<std::string>();
      a.text = r.at("text").get<std::string>();
      a.categories = r.at("categories").get<std::vector<std::string>>();
      out.push_back(std::move(a));
    } catch (const json::exception& e) {
      FailAtLine(lineno, e.what());
    }
  }
  return out;
}

void SaveGraph(const CategoryGraph& graph, std::ostream& out) {
  WriteHeader(out, "wikiner-graph");
  for (const auto& [name, node] : graph.nodes()) {
    out << json{{"category", name}, {"children", node.children}, {"members", node.members}}.dump()
        << '\n';
  }
}

CategoryGraph LoadGraph(std::istream& in) {
  ReadHeader(in, "wikiner-graph");
  CategoryGraph graph;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      const json r = json::parse(line);
      const auto name = r.at("category").get<std::string>();
      graph.AddNode(name);
      for (const auto& child : r.at("children")) graph.AddEdge(name, child.get<std::string>());
      for (const auto& member : r.at("members")) graph.AddMember(name, member.get<std::string>());
    } catch (const json::exception& e) {
      FailAtLine(lineno, e.what());
    }
  }
  return graph;
}

PlainText StripMarkup(std::string_view src) {
  PlainText out;
  std::string& text = out.text;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return src.substr(i, p.size()) == p; };
  while (i < src.size()) {
    if (starts("{{")) {
      std::size_t depth = 0;
      std::size_t j = i;
      while (j < src.size()) {
        if (src.substr(j, 2) == "{{") {
          ++depth;
          j += 2;
        } else if (src.substr(j, 2) == "}}") {
          j += 2;
          if (--depth == 0) break;
        } else {
          ++j;
        }
      }
      i = depth == 0 ? j : i + 2;
      continue;
    }
    if (starts("<ref")) {
      const std::size_t tag_end = src.find('>', i);
      if (tag_end != std::string_view::npos) {
        if (src[tag_end - 1] == '/') {
          i = tag_end + 1;
        } else {
          const std::size_t close = src.find("</ref>", tag_end);
          i = close == std::string_view::npos ? tag_end + 1 : close + 6;
        }
        continue;
      }
    }
    if (src[i] == '<' && i + 1 < src.size() &&
        (std::isalpha(static_cast<unsigned char>(src[i + 1])) || src[i + 1] == '/' ||
         src[i + 1] == '!')) {
      const std::size_t tag_end = src.find('>', i);
      if (tag_end != std::string_view::npos) {
        i = tag_end + 1;
        continue;
      }
    }
    if (starts("[[")) {
      if (auto match = MatchLinkAt(src, i)) {
        ParsedBody body = ParseBody(match->body);
        if (!body.is_namespace) {
          const std::size_t begin = text.size();
          text += body.anchor;
          if (!body.target.empty() && !body.anchor.empty()) {
            out.links.push_back({std::move(body.target), std::move(body.anchor), begin, text.size()});
          }
        }
        i = match->end;
        continue;
      }
    }
    if ((src[i] == '\'' || src[i] == '=') && i + 1 < src.size() && src[i + 1] == src[i]) {
      const char c = src[i];
      while (i < src.size() && src[i] == c) ++i;
      continue;
    }
    if (src[i] == '[' || src[i] == ']') {
      ++i;
      continue;
    }
    text += src[i++];
  }
  return out;
}

namespace {

bool IsPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

struct RawToken {
  std::string text;
  std::size_t begin;  // character offsets in the source
  std::size_t end;
  std::size_t chunk;  // index of the whitespace-delimited chunk
};

std::vector<RawToken> TokenizeWithOffsets(std::string_view text) {
  std::vector<RawToken> out;
  std::size_t i = 0;
  std::size_t chunk = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t begin = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    std::size_t end = i;
    std::vector<RawToken> tail;
    while (begin < end && IsPunct(text[begin])) {
      out.push_back({std::string(1, text[begin]), begin, begin + 1, chunk});
      ++begin;
    }
    while (end > begin && IsPunct(text[end - 1])) {
      tail.push_back({std::string(1, text[end - 1]), end - 1, end, chunk});
      --end;
    }
    if (end > begin) out.push_back({std::string(text.substr(begin, end - begin)), begin, end, chunk});
    out.insert(out.end(), tail.rbegin(), tail.rend());
    ++chunk;
  }
  return out;
}

bool IsBoundaryChar(const std::string& token) {
  return token == "." || token == "!" || token == "?";
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : TokenizeWithOffsets(text)) out.push_back(std::move(t.text));
  return out;
}

std::vector<TokenizedSentence> SegmentText(const PlainText& plain) {
  const auto tokens = TokenizeWithOffsets(plain.text);

  // Link character spans mapped onto token spans; a later link overlapping
  // an earlier one is dropped.
  std::vector<LinkSpan> links;
  for (const auto& link : plain.links) {
    std::size_t first = tokens.size();
    std::size_t last = 0;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (tokens[t].end > link.begin && tokens[t].begin < link.end) {
        first = std::min(first, t);
        last = t + 1;
      }
    }
    if (first >= last) continue;
    if (!links.empty() && first < links.back().end) continue;
    links.push_back({first, last, link.target, link.anchor});
  }

  auto inside_link = [&](std::size_t cut) {
    for (const auto& l : links) {
      if (l.start < cut && cut < l.end) return true;
    }
    return false;
  };

  std::vector<TokenizedSentence> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    if (end <= start) return;
    TokenizedSentence s;
    for (std::size_t t = start; t < end; ++t) s.tokens.push_back(tokens[t].text);
    for (const auto& l : links) {
      if (l.start >= start && l.end <= end) {
        s.links.push_back({l.start - start, l.end - start, l.target, l.anchor});
      }
    }
    out.push_back(std::move(s));
    start = end;
  };

  for (std::size_t t = 0; t + 1 < tokens.size(); ++t) {
    const bool chunk_ends = tokens[t + 1].chunk != tokens[t].chunk;
    if (chunk_ends && IsBoundaryChar(tokens[t].text) && IsAsciiUpper(tokens[t + 1].text[0]) &&
        !inside_link(t + 1)) {
      emit(t + 1);
    }
  }
  emit(tokens.size());
  return out;
}

std::vector<std::vector<std::string>> SplitSentences(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  for (auto& s : SegmentText(PlainText{std::string(text), {}})) out.push_back(std::move(s.tokens));
  return out;
}

}  // namespace wikiner
