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

#ifndef WIKINER_CORE_CURATOR_HPP_
#define WIKINER_CORE_CURATOR_HPP_

#include <cstddef>
#include <deque>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/wiki.hpp"

namespace wikiner {

// Human-steered breadth-first traversal of the category graph that selects
// the articles of a new entity class.
//
// A prompt shows a category and up to 10 of its articles. The answer decides
// what happens next:
//   KeepAll           children are queued, member articles are kept
//   KeepCategoryOnly  children are queued
//   Skip              nothing
// Categories are queued at most once (visited/queued guard) so cyclic graphs
// terminate, and children are queued in title order so sessions replay
// deterministically.

enum class Decision { kKeepAll, kKeepCategoryOnly, kSkip };

std::string_view DecisionName(Decision d);             // keep_all, ...
Decision ParseDecision(std::string_view name);         // throws on unknown
Decision DecisionFromTerminal(std::string_view input);  // 'y', 's', else skip

inline constexpr std::size_t kPromptSamples = 10;

struct CuratorSession {
  std::string class_name;
  std::string start_category;
  std::deque<std::string> queue;
  std::vector<std::pair<std::string, Decision>> decisions;
  std::set<std::string> kept_articles;
  std::set<std::string> visited;
  std::optional<std::string> current;  // prompted, awaiting a decision
};

struct CategoryPrompt {
  std::string category;
  std::vector<std::string> sample_articles;
  std::size_t queue_length = 0;
  std::size_t visited = 0;
  std::size_t kept_articles = 0;
  std::size_t decisions = 0;
};

CuratorSession StartSession(const CategoryGraph& graph, const std::string& start_category,
                            const std::string& class_name);

// Returns the pending prompt if there is one; otherwise pops the queue,
// skipping visited categories. nullopt once the queue is exhausted.
std::optional<CategoryPrompt> NextPrompt(CuratorSession& session, const CategoryGraph& graph);

// `category` must be the pending prompt.
void ApplyDecision(CuratorSession& session, const CategoryGraph& graph,
                   const std::string& category, Decision decision);

CuratorSession Replay(const CategoryGraph& graph, const std::string& start_category,
                      const std::string& class_name,
                      const std::vector<std::pair<std::string, Decision>>& decisions);

std::vector<std::string> ExportArticleSet(const CuratorSession& session);

// Line-delimited decision log:
//   {"format":"wikiner-curator-log","version":1,"class":"FOOD","start":"Food and drink"}
//   {"category":"Food and drink","decision":"keep_all"}
struct DecisionLog {
  std::string class_name;
  std::string start_category;
  std::vector<std::pair<std::string, Decision>> decisions;
};

DecisionLog ReadDecisionLog(std::istream& in);
std::string DecisionLogHeader(const std::string& class_name, const std::string& start_category);
std::string DecisionLogRecord(const std::string& category, Decision decision);

// Thread-safe wrapper that serializes decisions, persists them to the log
// after each one, and renders the HTTP JSON payloads.
class CuratorService {
 public:
  CuratorService(std::shared_ptr<const CategoryGraph> graph, std::string start_category,
                 std::string class_name);

  // Resumes from `log_path` if it exists, otherwise starts a new log there.
  static std::unique_ptr<CuratorService> Open(std::shared_ptr<const CategoryGraph> graph,
                                              std::string start_category, std::string class_name,
                                              const std::string& log_path);

  std::string StateJson();
  std::string NextJson();
  // Body: {"category": ..., "decision": "keep_all"|"keep_category_only"|"skip"}
  std::string DecideJson(const std::string& body);
  std::string Decide(const std::string& category, Decision decision);
  std::string ExportJson();

  std::vector<std::string> Export();
  CuratorSession Snapshot();

 private:
  std::string CountsLocked() const;

  std::shared_ptr<const CategoryGraph> graph_;
  CuratorSession session_;
  std::unique_ptr<std::ofstream> log_;
  std::mutex mu_;
};

}  // namespace wikiner

#endif  // WIKINER_CORE_CURATOR_HPP_
