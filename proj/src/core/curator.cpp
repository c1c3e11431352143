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

#include "core/curator.hpp"

#include <algorithm>
#include <filesystem>
#include <istream>

#include "core/error.hpp"
#include "core/strings.hpp"
#include "json.hpp"

namespace wikiner {

using nlohmann::json;

std::string_view DecisionName(Decision d) {
  switch (d) {
    case Decision::kKeepAll:
      return "keep_all";
    case Decision::kKeepCategoryOnly:
      return "keep_category_only";
    case Decision::kSkip:
      return "skip";
  }
  return "skip";
}

Decision ParseDecision(std::string_view name) {
  if (name == "keep_all") return Decision::kKeepAll;
  if (name == "keep_category_only") return Decision::kKeepCategoryOnly;
  if (name == "skip") return Decision::kSkip;
  Fail(ErrorCode::kInvalidArgument, "unknown decision '" + std::string(name) + "'");
}

Decision DecisionFromTerminal(std::string_view input) {
  input = Trim(input);
  if (input == "y") return Decision::kKeepAll;
  if (input == "s") return Decision::kKeepCategoryOnly;
  return Decision::kSkip;
}

CuratorSession StartSession(const CategoryGraph& graph, const std::string& start_category,
                            const std::string& class_name) {
  if (!graph.Contains(start_category)) {
    Fail(ErrorCode::kNotFound, "unknown start category '" + start_category + "'");
  }
  CuratorSession s;
  s.class_name = class_name;
  s.start_category = start_category;
  s.queue.push_back(start_category);
  return s;
}

std::optional<CategoryPrompt> NextPrompt(CuratorSession& session, const CategoryGraph& graph) {
  while (!session.current) {
    if (session.queue.empty()) return std::nullopt;
    std::string next = std::move(session.queue.front());
    session.queue.pop_front();
    if (!session.visited.count(next)) session.current = std::move(next);
  }
  CategoryPrompt p;
  p.category = *session.current;
  for (const auto& id : graph.Node(p.category).members) {
    if (p.sample_articles.size() == kPromptSamples) break;
    p.sample_articles.push_back(id);
  }
  p.queue_length = session.queue.size();
  p.visited = session.visited.size();
  p.kept_articles = session.kept_articles.size();
  p.decisions = session.decisions.size();
  return p;
}

void ApplyDecision(CuratorSession& session, const CategoryGraph& graph,
                   const std::string& category, Decision decision) {
  if (!session.current || *session.current != category) {
    Fail(ErrorCode::kState, "decision for '" + category + "' but the current prompt is " +
                                (session.current ? "'" + *session.current + "'" : "none"));
  }
  const CategoryNode& node = graph.Node(category);
  if (decision != Decision::kSkip) {
    for (const auto& child : node.children) {
      if (child == category || session.visited.count(child)) continue;
      if (std::find(session.queue.begin(), session.queue.end(), child) != session.queue.end()) {
        continue;
      }
      session.queue.push_back(child);
    }
  }
  if (decision == Decision::kKeepAll) {
    session.kept_articles.insert(node.members.begin(), node.members.end());
  }
  session.decisions.emplace_back(category, decision);
  session.visited.insert(category);
  session.current.reset();
}

CuratorSession Replay(const CategoryGraph& graph, const std::string& start_category,
                      const std::string& class_name,
                      const std::vector<std::pair<std::string, Decision>>& decisions) {
  CuratorSession s = StartSession(graph, start_category, class_name);
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const auto& [category, decision] = decisions[i];
    if (!graph.Contains(category)) {
      Fail(ErrorCode::kNotFound,
           "log entry " + std::to_string(i) + ": unknown category '" + category + "'");
    }
    auto prompt = NextPrompt(s, graph);
    if (!prompt || prompt->category != category) {
      Fail(ErrorCode::kState, "log entry " + std::to_string(i) + ": expected '" +
                                  (prompt ? prompt->category : std::string("<done>")) +
                                  "', log has '" + category + "'");
    }
    ApplyDecision(s, graph, category, decision);
  }
  return s;
}

std::vector<std::string> ExportArticleSet(const CuratorSession& session) {
  return {session.kept_articles.begin(), session.kept_articles.end()};
}

DecisionLog ReadDecisionLog(std::istream& in) {
  DecisionLog log;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      const json r = json::parse(line);
      if (!header) {
        if (r.value("format", "") != "wikiner-curator-log") {
          Fail(ErrorCode::kParse, "line 1: not a curator log");
        }
        log.class_name = r.at("class").get<std::string>();
        log.start_category = r.at("start").get<std::string>();
        header = true;
        continue;
      }
      log.decisions.emplace_back(r.at("category").get<std::string>(),
                                 ParseDecision(r.at("decision").get<std::string>()));
    } catch (const json::exception& e) {
      Fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kParse) throw;
      Fail(ErrorCode::kParse, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header) Fail(ErrorCode::kParse, "empty curator log");
  return log;
}

std::string DecisionLogHeader(const std::string& class_name, const std::string& start_category) {
  return json{{"format", "wikiner-curator-log"},
              {"version", 1},
              {"class", class_name},
              {"start", start_category}}
      .dump();
}

std::string DecisionLogRecord(const std::string& category, Decision decision) {
  return json{{"category", category}, {"decision", DecisionName(decision)}}.dump();
}

CuratorService::CuratorService(std::shared_ptr<const CategoryGraph> graph,
                               std::string start_category, std::string class_name)
    : graph_(std::move(graph)),
      session_(StartSession(*graph_, start_category, class_name)) {}

std::unique_ptr<CuratorService> CuratorService::Open(std::shared_ptr<const CategoryGraph> graph,
                                                     std::string start_category,
                                                     std::string class_name,
                                                     const std::string& log_path) {
  auto service = std::make_unique<CuratorService>(graph, start_category, class_name);
  const bool resume = std::filesystem::exists(log_path) && std::filesystem::file_size(log_path) > 0;
  if (resume) {
    std::ifstream in(log_path);
    if (!in) Fail(ErrorCode::kIo, "cannot read '" + log_path + "'");
    DecisionLog log = ReadDecisionLog(in);
    if (log.class_name != class_name || log.start_category != start_category) {
      Fail(ErrorCode::kInvalidArgument, "log '" + log_path + "' belongs to class '" +
                                            log.class_name + "' starting at '" +
                                            log.start_category + "'");
    }
    service->session_ = Replay(*graph, start_category, class_name, log.decisions);
  }
  service->log_ = std::make_unique<std::ofstream>(log_path, std::ios::app);
  if (!*service->log_) Fail(ErrorCode::kIo, "cannot write '" + log_path + "'");
  if (!resume) *service->log_ << DecisionLogHeader(class_name, start_category) << '\n' << std::flush;
  return service;
}

std::string CuratorService::CountsLocked() const {
  return json{{"queue_length", session_.queue.size()},
              {"visited", session_.visited.size()},
              {"kept_articles", session_.kept_articles.size()},
              {"decisions", session_.decisions.size()}}
      .dump();
}

std::string CuratorService::StateJson() {
  std::lock_guard lock(mu_);
  json tail = json::array();
  const std::size_t n = session_.decisions.size();
  for (std::size_t i = n > 10 ? n - 10 : 0; i < n; ++i) {
    tail.push_back({{"category", session_.decisions[i].first},
                    {"decision", DecisionName(session_.decisions[i].second)}});
  }
  json state = json::parse(CountsLocked());
  state["class"] = session_.class_name;
  state["start"] = session_.start_category;
  state["queue"] = session_.queue;
  state["current"] = session_.current ? json(*session_.current) : json(nullptr);
  state["done"] = !session_.current && session_.queue.empty();
  state["log_tail"] = std::move(tail);
  return state.dump();
}

std::string CuratorService::NextJson() {
  std::lock_guard lock(mu_);
  auto prompt = NextPrompt(session_, *graph_);
  json out = json::parse(CountsLocked());
  out["done"] = !prompt.has_value();
  if (prompt) {
    out["category"] = prompt->category;
    out["sample_articles"] = prompt->sample_articles;
  }
  return out.dump();
}

std::string CuratorService::Decide(const std::string& category, Decision decision) {
  std::lock_guard lock(mu_);
  ApplyDecision(session_, *graph_, category, decision);
  if (log_) {
    *log_ << DecisionLogRecord(category, decision) << '\n' << std::flush;
    if (!*log_) Fail(ErrorCode::kIo, "failed to append to the decision log");
  }
  json out = json::parse(CountsLocked());
  out["ok"] = true;
  return out.dump();
}

std::string CuratorService::DecideJson(const std::string& body) {
  std::string category;
  Decision decision;
  json r;
  try {
    r = json::parse(body);
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("decision body is not JSON: ") + e.what());
  }
  try {
    category = r.at("category").get<std::string>();
    decision = ParseDecision(r.at("decision").get<std::string>());
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidArgument, std::string("malformed decision: ") + e.what());
  }
  return Decide(category, decision);
}

std::vector<std::string> CuratorService::Export() {
  std::lock_guard lock(mu_);
  return ExportArticleSet(session_);
}

std::string CuratorService::ExportJson() {
  const auto ids = Export();
  return json{{"articles", ids}, {"count", ids.size()}}.dump();
}

CuratorSession CuratorService::Snapshot() {
  std::lock_guard lock(mu_);
  return session_;
}

}  // namespace wikiner
