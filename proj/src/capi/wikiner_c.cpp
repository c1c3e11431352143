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

#include "wikiner/wikiner.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/alias_dict.hpp"
#include "core/corpus.hpp"
#include "core/curator.hpp"
#include "core/curator_server.hpp"
#include "core/dataset.hpp"
#include "core/error.hpp"
#include "core/eval.hpp"
#include "core/strings.hpp"
#include "core/synth.hpp"
#include "core/tagger.hpp"
#include "core/train.hpp"
#include "core/wiki.hpp"

struct wner_inventory {
  wikiner::ClassInventory value;
};
struct wner_wiki {
  std::vector<wikiner::Article> articles;
  std::shared_ptr<const wikiner::CategoryGraph> graph;
};
struct wner_session {
  std::unique_ptr<wikiner::CuratorService> service;
};
struct wner_server {
  std::unique_ptr<wikiner::CuratorServer> server;
};
struct wner_dict {
  wikiner::AliasDictionary value;
};
struct wner_article_set {
  std::set<std::string> ids;
};
struct wner_gazetteer {
  wikiner::GazetteerTagger value;
};
struct wner_corpus {
  std::vector<wikiner::Sentence> sentences;
};
struct wner_model {
  wikiner::TaggerModel value;
};
struct wner_report {
  wikiner::EvalReport value;
};

namespace {

using wikiner::ErrorCode;

thread_local std::string g_last_error;

wner_status SetError(wner_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
wner_status Guard(Fn&& fn) {
  try {
    fn();
    return WNER_OK;
  } catch (const wikiner::Error& e) {
    return SetError(static_cast<wner_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(WNER_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(WNER_E_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) wikiner::Fail(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) wikiner::Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  return in;
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) wikiner::Fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  out.flush();
  if (!out) wikiner::Fail(ErrorCode::kIo, "write failed for '" + path + "'");
}

template <typename T>
void WithPath(const std::string& path, T&& fn) {
  try {
    fn();
  } catch (const wikiner::Error& e) {
    throw wikiner::Error(e.code(), path + ": " + e.what());
  }
}

std::vector<wikiner::Sentence> CopyOrEmpty(const wner_corpus* c) {
  return c == nullptr ? std::vector<wikiner::Sentence>{} : c->sentences;
}

}  // namespace

extern "C" {

const char* wner_version(void) { return "0.1.0"; }

const char* wner_last_error(void) { return g_last_error.c_str(); }

void wner_string_free(char* s) { std::free(s); }

wner_status wner_inventory_create(const char* legacy_csv, const char* new_csv,
                                  wner_inventory** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    auto inv = wikiner::ClassInventory::FromLists(legacy_csv ? legacy_csv : "",
                                                  new_csv ? new_csv : "");
    *out = new wner_inventory{std::move(inv)};
  });
}

wner_status wner_inventory_parse(const char* text, wner_inventory** out) {
  return Guard([&] {
    Require(text != nullptr && out != nullptr, "text and out");
    *out = new wner_inventory{wikiner::ClassInventory::Parse(text)};
  });
}

wner_status wner_inventory_serialize(const wner_inventory* inv, char** out) {
  return Guard([&] {
    Require(inv != nullptr && out != nullptr, "inventory and out");
    *out = Dup(inv->value.Serialize());
  });
}

size_t wner_inventory_label_count(const wner_inventory* inv) {
  return inv == nullptr ? 0 : inv->value.label_count();
}

void wner_inventory_free(wner_inventory* inv) { delete inv; }

wner_status wner_wiki_parse_dump(const char* dump_path, wner_wiki** out) {
  return Guard([&] {
    Require(dump_path != nullptr && out != nullptr, "dump path and out");
    auto dump = wikiner::ParseDumpFile(dump_path);
    *out = new wner_wiki{std::move(dump.articles),
                         std::make_shared<const wikiner::CategoryGraph>(std::move(dump.graph))};
  });
}

wner_status wner_wiki_save(const wner_wiki* wiki, const char* articles_path,
                           const char* graph_path) {
  return Guard([&] {
    Require(wiki != nullptr && articles_path != nullptr && graph_path != nullptr,
            "wiki and paths");
    std::ostringstream a, g;
    wikiner::SaveArticles(wiki->articles, a);
    wikiner::SaveGraph(*wiki->graph, g);
    WriteFile(articles_path, a.str());
    WriteFile(graph_path, g.str());
  });
}

wner_status wner_wiki_load(const char* articles_path, const char* graph_path, wner_wiki** out) {
  return Guard([&] {
    Require(out != nullptr, "out");
    if (articles_path == nullptr && graph_path == nullptr) {
      wikiner::Fail(ErrorCode::kInvalidArgument, "need an articles or a graph path");
    }
    auto wiki = std::make_unique<wner_wiki>();
    if (articles_path != nullptr) {
      WithPath(articles_path, [&] {
        auto in = OpenIn(articles_path);
        wiki->articles = wikiner::LoadArticles(in);
      });
    }
    wikiner::CategoryGraph graph;
    if (graph_path != nullptr) {
      WithPath(graph_path, [&] {
        auto in = OpenIn(graph_path);
        graph = wikiner::LoadGraph(in);
      });
    }
    wiki->graph = std::make_shared<const wikiner::CategoryGraph>(std::move(graph));
    *out = wiki.release();
  });
}

size_t wner_wiki_article_count(const wner_wiki* wiki) {
  return wiki == nullptr ? 0 : wiki->articles.size();
}

size_t wner_wiki_category_count(const wner_wiki* wiki) {
  return wiki == nullptr ? 0 : wiki->graph->node_count();
}

void wner_wiki_free(wner_wiki* wiki) { delete wiki; }

wner_status wner_session_open(const wner_wiki* wiki, const char* start_category,
                              const char* class_name, const char* log_path,
                              wner_session** out) {
  return Guard([&] {
    Require(wiki != nullptr && start_category != nullptr && class_name != nullptr &&
                out != nullptr,
            "wiki, start category, class name and out");
    std::unique_ptr<wikiner::CuratorService> service;
    if (log_path != nullptr) {
      service = wikiner::CuratorService::Open(wiki->graph, start_category, class_name, log_path);
    } else {
      service = std::make_unique<wikiner::CuratorService>(wiki->graph, start_category, class_name);
    }
    *out = new wner_session{std::move(service)};
  });
}

wner_status wner_session_state_json(wner_session* s, char** out) {
  return Guard([&] {
    Require(s != nullptr && out != nullptr, "session and out");
    *out = Dup(s->service->StateJson());
  });
}

wner_status wner_session_next_json(wner_session* s, char** out) {
  return Guard([&] {
    Require(s != nullptr && out != nullptr, "session and out");
    *out = Dup(s->service->NextJson());
  });
}

wner_status wner_session_decide(wner_session* s, const char* category, const char* decision,
                                char** out_json) {
  return Guard([&] {
    Require(s != nullptr && category != nullptr && decision != nullptr,
            "session, category and decision");
    std::string reply = s->service->Decide(category, wikiner::ParseDecision(decision));
    if (out_json != nullptr) *out_json = Dup(reply);
  });
}

wner_status wner_session_decide_json(wner_session* s, const char* body, char** out_json) {
  return Guard([&] {
    Require(s != nullptr && body != nullptr, "session and body");
    std::string reply = s->service->DecideJson(body);
    if (out_json != nullptr) *out_json = Dup(reply);
  });
}

wner_status wner_session_export_json(wner_session* s, char** out) {
  return Guard([&] {
    Require(s != nullptr && out != nullptr, "session and out");
    *out = Dup(s->service->ExportJson());
  });
}

wner_status wner_session_export(wner_session* s, wner_article_set** out) {
  return Guard([&] {
    Require(s != nullptr && out != nullptr, "session and out");
    auto ids = s->service->Export();
    *out = new wner_article_set{std::set<std::string>(ids.begin(), ids.end())};
  });
}

void wner_session_free(wner_session* s) { delete s; }

wner_status wner_server_create(wner_session* s, const char* static_dir, wner_server** out) {
  return Guard([&] {
    Require(s != nullptr && out != nullptr, "session and out");
    auto server = std::make_unique<wikiner::CuratorServer>(*s->service);
    if (static_dir != nullptr) server->MountStatic(static_dir);
    *out = new wner_server{std::move(server)};
  });
}

wner_status wner_server_bind(wner_server* srv, const char* host, int port, int* bound_port) {
  return Guard([&] {
    Require(srv != nullptr && host != nullptr, "server and host");
    const int bound = srv->server->Bind(host, port);
    if (bound_port != nullptr) *bound_port = bound;
  });
}

wner_status wner_server_listen(wner_server* srv) {
  return Guard([&] {
    Require(srv != nullptr, "server");
    srv->server->Listen();
  });
}

void wner_server_stop(wner_server* srv) {
  if (srv != nullptr) srv->server->Stop();
}

void wner_server_free(wner_server* srv) { delete srv; }

wner_status wner_article_set_load(const char* path, wner_article_set** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "path and out");
    auto in = OpenIn(path);
    auto set = std::make_unique<wner_article_set>();
    std::string line;
    while (std::getline(in, line)) {
      auto id = wikiner::Trim(line);
      if (!id.empty()) set->ids.emplace(id);
    }
    *out = set.release();
  });
}

wner_status wner_article_set_save(const wner_article_set* set, const char* path) {
  return Guard([&] {
    Require(set != nullptr && path != nullptr, "set and path");
    std::string text;
    for (const auto& id : set->ids) text += id + "\n";
    WriteFile(path, text);
  });
}

size_t wner_article_set_size(const wner_article_set* set) {
  return set == nullptr ? 0 : set->ids.size();
}

void wner_article_set_free(wner_article_set* set) { delete set; }

wner_status wner_dict_build(const wner_wiki* wiki, wner_dict** out) {
  return Guard([&] {
    Require(wiki != nullptr && out != nullptr, "wiki and out");
    *out = new wner_dict{wikiner::BuildAliasDictionary(wiki->articles)};
  });
}

wner_status wner_dict_save(const wner_dict* dict, const char* path) {
  return Guard([&] {
    Require(dict != nullptr && path != nullptr, "dictionary and path");
    dict->value.SaveFile(path);
  });
}

wner_status wner_dict_load(const char* path, wner_dict** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "path and out");
    *out = new wner_dict{wikiner::AliasDictionary::LoadFile(path)};
  });
}

size_t wner_dict_alias_count(const wner_dict* dict) {
  return dict == nullptr ? 0 : dict->value.alias_count();
}

void wner_dict_free(wner_dict* dict) { delete dict; }

wner_status wner_gazetteer_load(const char* path, wner_gazetteer** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "path and out");
    *out = new wner_gazetteer{wikiner::GazetteerTagger::LoadFile(path)};
  });
}

void wner_gazetteer_free(wner_gazetteer* gaz) { delete gaz; }

wner_status wner_corpus_read(const char* path, const wner_inventory* inv, wner_corpus** out) {
  return Guard([&] {
    Require(path != nullptr && inv != nullptr && out != nullptr, "path, inventory and out");
    *out = new wner_corpus{wikiner::ReadConllFile(path, inv->value)};
  });
}

wner_status wner_corpus_write(const wner_corpus* corpus, const char* path,
                              const wner_inventory* inv) {
  return Guard([&] {
    Require(corpus != nullptr && path != nullptr && inv != nullptr,
            "corpus, path and inventory");
    wikiner::WriteConllFile(corpus->sentences, path, inv->value);
  });
}

size_t wner_corpus_size(const wner_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->sentences.size();
}

void wner_corpus_free(wner_corpus* corpus) { delete corpus; }

wner_status wner_build_wiki_corpus(const wner_wiki* wiki, const wner_dict* dict,
                                   const wner_inventory* inv, const char* class_name,
                                   const wner_article_set* class_articles,
                                   const wner_gazetteer* gazetteer, wner_corpus** out,
                                   char** stats_table) {
  return Guard([&] {
    Require(wiki != nullptr && dict != nullptr && inv != nullptr && class_name != nullptr &&
                class_articles != nullptr && out != nullptr,
            "wiki, dictionary, inventory, class name, article set and out");
    wikiner::BuildConfig config;
    config.inventory = inv->value;
    config.class_name = class_name;
    config.class_articles = class_articles->ids;
    config.aux_tagger = gazetteer != nullptr ? &gazetteer->value : nullptr;
    auto corpus = wikiner::BuildWikiCorpus(wiki->articles, dict->value, config);
    std::string table = wikiner::FormatStatsTable(class_name, corpus.stats);
    *out = new wner_corpus{std::move(corpus.sentences)};
    if (stats_table != nullptr) *stats_table = Dup(table);
  });
}

wner_status wner_mask_legacy(const wner_corpus* legacy, const wner_dict* dict,
                             const wner_inventory* inv, const wner_article_set* class_articles,
                             const wner_gazetteer* gazetteer, wner_corpus** out) {
  return Guard([&] {
    Require(legacy != nullptr && dict != nullptr && inv != nullptr &&
                class_articles != nullptr && out != nullptr,
            "corpus, dictionary, inventory, article set and out");
    auto masked = wikiner::MaskLegacyCorpus(legacy->sentences, dict->value, inv->value,
                                            class_articles->ids,
                                            gazetteer != nullptr ? &gazetteer->value : nullptr);
    *out = new wner_corpus{std::move(masked)};
  });
}

wner_status wner_split_merge(const wner_corpus* wiki, const wner_corpus* legacy_train,
                             const wner_corpus* legacy_dev, const wner_corpus* legacy_test,
                             uint64_t seed, double train_ratio, double dev_ratio,
                             double test_ratio, wner_corpus** train, wner_corpus** dev,
                             wner_corpus** test) {
  return Guard([&] {
    Require(wiki != nullptr && train != nullptr && dev != nullptr && test != nullptr,
            "wiki corpus and outputs");
    wikiner::BuildConfig config;
    config.seed = seed;
    config.train_ratio = train_ratio;
    config.dev_ratio = dev_ratio;
    config.test_ratio = test_ratio;
    auto splits = wikiner::SplitAndMerge(wiki->sentences, CopyOrEmpty(legacy_train),
                                         CopyOrEmpty(legacy_dev), CopyOrEmpty(legacy_test),
                                         config);
    auto tr = std::make_unique<wner_corpus>(wner_corpus{std::move(splits.train)});
    auto dv = std::make_unique<wner_corpus>(wner_corpus{std::move(splits.dev)});
    auto te = std::make_unique<wner_corpus>(wner_corpus{std::move(splits.test)});
    *train = tr.release();
    *dev = dv.release();
    *test = te.release();
  });
}

wner_status wner_holdout(const wner_corpus* corpus, size_t n, uint64_t seed,
                         const wner_inventory* inv, wner_corpus** held_out,
                         wner_corpus** remainder) {
  return Guard([&] {
    Require(corpus != nullptr && inv != nullptr && held_out != nullptr && remainder != nullptr,
            "corpus, inventory and outputs");
    auto h = wikiner::HoldoutForGold(corpus->sentences, n, seed, inv->value);
    auto held = std::make_unique<wner_corpus>(wner_corpus{std::move(h.held_out)});
    auto rest = std::make_unique<wner_corpus>(wner_corpus{std::move(h.remainder)});
    *held_out = held.release();
    *remainder = rest.release();
  });
}

void wner_model_options_default(wner_model_options* opts) {
  if (opts == nullptr) return;
  const wikiner::TaggerOptions d;
  opts->head = "softmax";
  opts->dim = d.dim;
  opts->radius = d.radius;
  opts->seed = d.seed;
}

wner_status wner_model_create(const wner_inventory* inv, const wner_corpus* vocab_corpus,
                              const wner_model_options* opts, wner_model** out) {
  return Guard([&] {
    Require(inv != nullptr && vocab_corpus != nullptr && opts != nullptr && out != nullptr,
            "inventory, corpus, options and out");
    Require(opts->head != nullptr, "options.head");
    wikiner::TaggerOptions options;
    options.head = wikiner::ParseHead(opts->head);
    options.dim = opts->dim;
    options.radius = opts->radius;
    options.seed = opts->seed;
    *out = new wner_model{wikiner::TaggerModel(
        inv->value, wikiner::Vocabulary::FromSentences(vocab_corpus->sentences), options)};
  });
}

wner_status wner_model_save(const wner_model* model, const char* path) {
  return Guard([&] {
    Require(model != nullptr && path != nullptr, "model and path");
    model->value.SaveFile(path);
  });
}

wner_status wner_model_load(const char* path, wner_model** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "path and out");
    *out = new wner_model{wikiner::TaggerModel::LoadFile(path)};
  });
}

const char* wner_model_head(const wner_model* model) {
  return model == nullptr ? "" : wikiner::HeadName(model->value.head()).data();
}

wner_status wner_model_inventory(const wner_model* model, wner_inventory** out) {
  return Guard([&] {
    Require(model != nullptr && out != nullptr, "model and out");
    *out = new wner_inventory{model->value.inventory()};
  });
}

void wner_model_free(wner_model* model) { delete model; }

void wner_train_config_default(wner_train_config* config) {
  if (config == nullptr) return;
  const wikiner::TrainConfig d;
  config->strategy = "softmax";
  config->batch_size = d.batch_size;
  config->epochs = d.epochs;
  config->learning_rate = d.adam.learning_rate;
  config->beta1 = d.adam.beta1;
  config->beta2 = d.adam.beta2;
  config->epsilon = d.adam.epsilon;
  config->seed = d.seed;
  config->select_class = nullptr;
}

wner_status wner_train(const wner_corpus* train, const wner_corpus* dev, const wner_model* init,
                       const wner_train_config* config, wner_model** best, size_t* best_epoch,
                       char** log_jsonl) {
  return Guard([&] {
    Require(train != nullptr && dev != nullptr && init != nullptr && config != nullptr &&
                best != nullptr,
            "train, dev, model, config and out");
    Require(config->strategy != nullptr, "config.strategy");
    wikiner::TrainConfig tc;
    tc.strategy = wikiner::ParseStrategy(config->strategy);
    tc.batch_size = config->batch_size;
    tc.epochs = config->epochs;
    tc.adam.learning_rate = config->learning_rate;
    tc.adam.beta1 = config->beta1;
    tc.adam.beta2 = config->beta2;
    tc.adam.epsilon = config->epsilon;
    tc.seed = config->seed;
    if (config->select_class != nullptr) tc.select_class = config->select_class;
    auto result = wikiner::Train(train->sentences, dev->sentences, init->value, tc);
    std::string log;
    for (const auto& e : result.log) log += e.ToJson() + "\n";
    auto model = std::make_unique<wner_model>(wner_model{std::move(result.best_model)});
    if (log_jsonl != nullptr) *log_jsonl = Dup(log);
    if (best_epoch != nullptr) *best_epoch = result.best_epoch;
    *best = model.release();
  });
}

wner_status wner_evaluate(const wner_model* model, const wner_corpus* test, wner_report** out) {
  return Guard([&] {
    Require(model != nullptr && test != nullptr && out != nullptr, "model, corpus and out");
    *out = new wner_report{wikiner::Evaluate(model->value, test->sentences)};
  });
}

wner_status wner_predict(const wner_model* model, const wner_corpus* corpus, wner_corpus** out) {
  return Guard([&] {
    Require(model != nullptr && corpus != nullptr && out != nullptr, "model, corpus and out");
    const auto labels = wikiner::PredictLabels(model->value, corpus->sentences);
    auto result = std::make_unique<wner_corpus>(*corpus);
    const auto full = wikiner::FullMask(model->value.inventory());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto& tokens = result->sentences[i].tokens;
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        tokens[t].gold_label = labels[i][t];
        tokens[t].supervision = full;
      }
    }
    *out = result.release();
  });
}

wner_status wner_baseline(const wner_corpus* gold, const wner_dict* dict,
                          const wner_article_set* class_articles, const wner_inventory* inv,
                          const char* class_name, wner_report** out) {
  return Guard([&] {
    Require(gold != nullptr && dict != nullptr && class_articles != nullptr && inv != nullptr &&
                class_name != nullptr && out != nullptr,
            "gold, dictionary, article set, inventory, class name and out");
    *out = new wner_report{wikiner::BaselineAnnotate(gold->sentences, dict->value,
                                                     class_articles->ids, inv->value,
                                                     class_name)};
  });
}

wner_status wner_report_json(const wner_report* report, char** out) {
  return Guard([&] {
    Require(report != nullptr && out != nullptr, "report and out");
    *out = Dup(report->value.ToJson());
  });
}

wner_status wner_report_scores(const wner_report* report, const char* class_name,
                               double* precision, double* recall, double* f1) {
  return Guard([&] {
    Require(report != nullptr, "report");
    const auto& counts =
        class_name != nullptr ? report->value.ForClass(class_name) : report->value.micro;
    if (precision != nullptr) *precision = counts.precision();
    if (recall != nullptr) *recall = counts.recall();
    if (f1 != nullptr) *f1 = counts.f1();
  });
}

wner_status wner_report_table(const wner_report* const* reports, const char* const* model_names,
                              const char* const* dataset_names, size_t n,
                              const char* only_class, char** out) {
  return Guard([&] {
    Require(out != nullptr && (n == 0 || (reports != nullptr && model_names != nullptr &&
                                          dataset_names != nullptr)),
            "reports, names and out");
    std::vector<wikiner::NamedReport> named;
    for (size_t i = 0; i < n; ++i) {
      Require(reports[i] != nullptr && model_names[i] != nullptr && dataset_names[i] != nullptr,
              "report entries");
      named.push_back({model_names[i], dataset_names[i], reports[i]->value});
    }
    std::optional<std::string> cls;
    if (only_class != nullptr) cls = only_class;
    *out = Dup(wikiner::ReportTable(named, cls));
  });
}

void wner_report_free(wner_report* report) { delete report; }

wner_status wner_synth_generate(uint64_t seed, size_t sentences, const char* out_dir) {
  return Guard([&] {
    Require(out_dir != nullptr, "out_dir");
    wikiner::SynthConfig config;
    config.seed = seed;
    if (sentences != 0) config.sentences = sentences;
    wikiner::WriteWorld(wikiner::GenerateWorld(config), out_dir);
  });
}

}  // extern "C"
