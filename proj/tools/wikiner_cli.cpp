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

// Command line front end for libwikiner.

#include <signal.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wikiner/wikiner.h"

namespace {

using ordered_json = nlohmann::ordered_json;

struct CliError : std::runtime_error {
  CliError(int code, const std::string& message) : std::runtime_error(message), code(code) {}
  int code;
};

void Check(wner_status status) {
  if (status != WNER_OK) throw CliError(static_cast<int>(status), wner_last_error());
}

struct Deleter {
  void operator()(wner_inventory* p) const { wner_inventory_free(p); }
  void operator()(wner_wiki* p) const { wner_wiki_free(p); }
  void operator()(wner_session* p) const { wner_session_free(p); }
  void operator()(wner_server* p) const { wner_server_free(p); }
  void operator()(wner_dict* p) const { wner_dict_free(p); }
  void operator()(wner_article_set* p) const { wner_article_set_free(p); }
  void operator()(wner_gazetteer* p) const { wner_gazetteer_free(p); }
  void operator()(wner_corpus* p) const { wner_corpus_free(p); }
  void operator()(wner_model* p) const { wner_model_free(p); }
  void operator()(wner_report* p) const { wner_report_free(p); }
  void operator()(char* p) const { wner_string_free(p); }
};

template <typename T>
using Handle = std::unique_ptr<T, Deleter>;

// Adopts a library-allocated string.
std::string Take(char* s) {
  Handle<char> owned(s);
  return s == nullptr ? std::string() : std::string(s);
}

const char* OrNull(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

void PrintConfig(const std::string& command, const ordered_json& config) {
  std::cerr << "wikiner " << command << " " << config.dump() << "\n";
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(WNER_E_IO, "cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw CliError(WNER_E_IO, "write failed for '" + path + "'");
}

Handle<wner_inventory> ParseInventory(const std::string& text) {
  wner_inventory* inv = nullptr;
  Check(wner_inventory_parse(text.c_str(), &inv));
  return Handle<wner_inventory>(inv);
}

Handle<wner_corpus> ReadCorpus(const std::string& path, const wner_inventory* inv) {
  if (path.empty()) return nullptr;
  wner_corpus* c = nullptr;
  Check(wner_corpus_read(path.c_str(), inv, &c));
  return Handle<wner_corpus>(c);
}

Handle<wner_dict> LoadDict(const std::string& path) {
  wner_dict* d = nullptr;
  Check(wner_dict_load(path.c_str(), &d));
  return Handle<wner_dict>(d);
}

Handle<wner_article_set> LoadArticleSet(const std::string& path) {
  wner_article_set* s = nullptr;
  Check(wner_article_set_load(path.c_str(), &s));
  return Handle<wner_article_set>(s);
}

Handle<wner_gazetteer> LoadGazetteer(const std::string& path) {
  if (path.empty()) return nullptr;
  wner_gazetteer* g = nullptr;
  Check(wner_gazetteer_load(path.c_str(), &g));
  return Handle<wner_gazetteer>(g);
}

Handle<wner_model> LoadModel(const std::string& path) {
  wner_model* m = nullptr;
  Check(wner_model_load(path.c_str(), &m));
  return Handle<wner_model>(m);
}

std::string Stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// --- synth -----------------------------------------------------------------

struct SynthArgs {
  std::string out;
  std::uint64_t seed = 7;
  std::size_t sentences = 2000;
};

void RunSynth(const SynthArgs& a) {
  PrintConfig("synth", {{"out", a.out}, {"seed", a.seed}, {"sentences", a.sentences}});
  Check(wner_synth_generate(a.seed, a.sentences, a.out.c_str()));
}

// --- ingest ----------------------------------------------------------------

struct IngestArgs {
  std::string dump, articles, graph;
};

void RunIngest(const IngestArgs& a) {
  PrintConfig("ingest", {{"dump", a.dump}, {"articles", a.articles}, {"graph", a.graph}});
  wner_wiki* w = nullptr;
  Check(wner_wiki_parse_dump(a.dump.c_str(), &w));
  Handle<wner_wiki> wiki(w);
  Check(wner_wiki_save(wiki.get(), a.articles.c_str(), a.graph.c_str()));
  std::cout << "articles " << wner_wiki_article_count(wiki.get()) << ", categories "
            << wner_wiki_category_count(wiki.get()) << "\n";
}

// --- curate ----------------------------------------------------------------

struct CurateArgs {
  std::string graph, start, class_name, log, out, host = "127.0.0.1", static_dir;
  bool tty = false;
  bool serve = false;
  int port = 8080;
};

void RunTty(wner_session* session) {
  std::string line;
  for (;;) {
    const auto next = ordered_json::parse(Take([&] {
      char* s = nullptr;
      Check(wner_session_next_json(session, &s));
      return s;
    }()));
    if (next.at("done").get<bool>()) break;
    const std::string category = next.at("category").get<std::string>();
    std::cout << "\n[" << category << "]  queue " << next.at("queue_length").get<std::size_t>()
              << ", visited " << next.at("visited").get<std::size_t>() << ", kept "
              << next.at("kept_articles").get<std::size_t>() << "\n";
    for (const auto& title : next.at("sample_articles")) {
      std::cout << "  - " << title.get<std::string>() << "\n";
    }
    std::cout << "keep all (y), category only (s), skip (n)? " << std::flush;
    if (!std::getline(std::cin, line)) {
      std::cout << "\n";
      return;
    }
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    const char* decision = trimmed == "y" ? "keep_all"
                           : trimmed == "s" ? "keep_category_only"
                                            : "skip";
    Check(wner_session_decide(session, category.c_str(), decision, nullptr));
  }
}

void RunServe(wner_session* session, const CurateArgs& a) {
  wner_server* raw = nullptr;
  Check(wner_server_create(session, OrNull(a.static_dir), &raw));
  Handle<wner_server> server(raw);
  int port = 0;
  Check(wner_server_bind(server.get(), a.host.c_str(), a.port, &port));
  std::cerr << "listening on http://" << a.host << ":" << port << "\n";

  // SIGINT/SIGTERM stop the server from a watcher thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    wner_server_stop(server.get());
  });
  const wner_status status = wner_server_listen(server.get());
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  Check(status);
}

void RunCurate(const CurateArgs& a) {
  if (a.tty == a.serve) throw CliError(WNER_E_INVALID_ARGUMENT, "choose exactly one of --tty and --serve");
  PrintConfig("curate", {{"graph", a.graph},
                         {"start", a.start},
                         {"class", a.class_name},
                         {"log", a.log},
                         {"mode", a.tty ? "tty" : "serve"},
                         {"out", a.out}});
  wner_wiki* w = nullptr;
  Check(wner_wiki_load(nullptr, a.graph.c_str(), &w));
  Handle<wner_wiki> wiki(w);
  wner_session* s = nullptr;
  Check(wner_session_open(wiki.get(), a.start.c_str(), a.class_name.c_str(), OrNull(a.log), &s));
  Handle<wner_session> session(s);
  if (a.tty) {
    RunTty(session.get());
  } else {
    RunServe(session.get(), a);
  }
  if (!a.out.empty()) {
    wner_article_set* set = nullptr;
    Check(wner_session_export(session.get(), &set));
    Handle<wner_article_set> kept(set);
    Check(wner_article_set_save(kept.get(), a.out.c_str()));
    std::cout << "kept " << wner_article_set_size(kept.get()) << " articles\n";
  }
}

// --- build-dict --------------------------------------------------------------

struct BuildDictArgs {
  std::string articles, out;
};

void RunBuildDict(const BuildDictArgs& a) {
  PrintConfig("build-dict", {{"articles", a.articles}, {"out", a.out}});
  wner_wiki* w = nullptr;
  Check(wner_wiki_load(a.articles.c_str(), nullptr, &w));
  Handle<wner_wiki> wiki(w);
  wner_dict* d = nullptr;
  Check(wner_dict_build(wiki.get(), &d));
  Handle<wner_dict> dict(d);
  Check(wner_dict_save(dict.get(), a.out.c_str()));
  std::cout << "aliases " << wner_dict_alias_count(dict.get()) << "\n";
}

// --- build-corpus --------------------------------------------------------------

struct BuildCorpusArgs {
  std::string articles, dict, kept, classes, class_name, gazetteer, out, stats;
};

void RunBuildCorpus(const BuildCorpusArgs& a) {
  PrintConfig("build-corpus", {{"articles", a.articles},
                               {"dict", a.dict},
                               {"kept", a.kept},
                               {"classes", a.classes},
                               {"class", a.class_name},
                               {"gazetteer", a.gazetteer},
                               {"out", a.out}});
  auto inv = ParseInventory(a.classes);
  wner_wiki* w = nullptr;
  Check(wner_wiki_load(a.articles.c_str(), nullptr, &w));
  Handle<wner_wiki> wiki(w);
  auto dict = LoadDict(a.dict);
  auto kept = LoadArticleSet(a.kept);
  auto gaz = LoadGazetteer(a.gazetteer);
  wner_corpus* c = nullptr;
  char* table = nullptr;
  Check(wner_build_wiki_corpus(wiki.get(), dict.get(), inv.get(), a.class_name.c_str(),
                               kept.get(), gaz.get(), &c, &table));
  Handle<wner_corpus> corpus(c);
  const std::string stats = Take(table);
  Check(wner_corpus_write(corpus.get(), a.out.c_str(), inv.get()));
  if (!a.stats.empty()) WriteText(a.stats, stats);
  std::cout << stats;
}

// --- mask-legacy ---------------------------------------------------------------

struct MaskLegacyArgs {
  std::string in, out, dict, kept, classes, gazetteer;
};

void RunMaskLegacy(const MaskLegacyArgs& a) {
  PrintConfig("mask-legacy", {{"in", a.in},
                              {"out", a.out},
                              {"dict", a.dict},
                              {"kept", a.kept},
                              {"classes", a.classes},
                              {"gazetteer", a.gazetteer}});
  auto inv = ParseInventory(a.classes);
  auto legacy = ReadCorpus(a.in, inv.get());
  auto dict = LoadDict(a.dict);
  auto kept = LoadArticleSet(a.kept);
  auto gaz = LoadGazetteer(a.gazetteer);
  wner_corpus* c = nullptr;
  Check(wner_mask_legacy(legacy.get(), dict.get(), inv.get(), kept.get(), gaz.get(), &c));
  Handle<wner_corpus> masked(c);
  Check(wner_corpus_write(masked.get(), a.out.c_str(), inv.get()));
  std::cout << "sentences " << wner_corpus_size(masked.get()) << "\n";
}

// --- split-merge ---------------------------------------------------------------

struct SplitMergeArgs {
  std::string wiki, legacy_train, legacy_dev, legacy_test, classes, out_dir;
  std::uint64_t seed = 7;
  std::vector<double> ratios = {0.8, 0.1, 0.1};
};

void RunSplitMerge(const SplitMergeArgs& a) {
  PrintConfig("split-merge", {{"wiki", a.wiki},
                              {"legacy_train", a.legacy_train},
                              {"legacy_dev", a.legacy_dev},
                              {"legacy_test", a.legacy_test},
                              {"classes", a.classes},
                              {"seed", a.seed},
                              {"ratios", a.ratios},
                              {"out_dir", a.out_dir}});
  auto inv = ParseInventory(a.classes);
  auto wiki = ReadCorpus(a.wiki, inv.get());
  auto lt = ReadCorpus(a.legacy_train, inv.get());
  auto ld = ReadCorpus(a.legacy_dev, inv.get());
  auto le = ReadCorpus(a.legacy_test, inv.get());
  wner_corpus *tr = nullptr, *dv = nullptr, *te = nullptr;
  Check(wner_split_merge(wiki.get(), lt.get(), ld.get(), le.get(), a.seed, a.ratios[0],
                         a.ratios[1], a.ratios[2], &tr, &dv, &te));
  Handle<wner_corpus> train(tr), dev(dv), test(te);
  std::filesystem::create_directories(a.out_dir);
  const std::filesystem::path dir(a.out_dir);
  Check(wner_corpus_write(train.get(), (dir / "train.conll").c_str(), inv.get()));
  Check(wner_corpus_write(dev.get(), (dir / "dev.conll").c_str(), inv.get()));
  Check(wner_corpus_write(test.get(), (dir / "test.conll").c_str(), inv.get()));
  std::cout << "train " << wner_corpus_size(train.get()) << ", dev "
            << wner_corpus_size(dev.get()) << ", test " << wner_corpus_size(test.get()) << "\n";
}

// --- holdout ------------------------------------------------------------------

struct HoldoutArgs {
  std::string in, classes, held_out, remainder;
  std::size_t n = 500;
  std::uint64_t seed = 7;
};

void RunHoldout(const HoldoutArgs& a) {
  PrintConfig("holdout", {{"in", a.in},
                          {"classes", a.classes},
                          {"n", a.n},
                          {"seed", a.seed},
                          {"held_out", a.held_out},
                          {"remainder", a.remainder}});
  auto inv = ParseInventory(a.classes);
  auto corpus = ReadCorpus(a.in, inv.get());
  wner_corpus *h = nullptr, *r = nullptr;
  Check(wner_holdout(corpus.get(), a.n, a.seed, inv.get(), &h, &r));
  Handle<wner_corpus> held(h), rest(r);
  Check(wner_corpus_write(held.get(), a.held_out.c_str(), inv.get()));
  Check(wner_corpus_write(rest.get(), a.remainder.c_str(), inv.get()));
}

// --- train ----------------------------------------------------------------------

struct TrainArgs {
  std::string train, dev, classes, strategy = "softmax", head, init, out, log, select_class;
  std::size_t batch_size = 32, epochs = 10, dim = 32, radius = 2;
  double lr = 5e-5;
  std::uint64_t seed = 7;
};

void RunTrain(const TrainArgs& a) {
  Handle<wner_model> init;
  Handle<wner_inventory> inv;
  if (!a.init.empty()) {
    init = LoadModel(a.init);
    wner_inventory* i = nullptr;
    Check(wner_model_inventory(init.get(), &i));
    inv.reset(i);
  } else {
    if (a.classes.empty()) throw CliError(WNER_E_INVALID_ARGUMENT, "--classes is required without --init");
    inv = ParseInventory(a.classes);
  }
  auto train = ReadCorpus(a.train, inv.get());
  auto dev = ReadCorpus(a.dev, inv.get());

  std::string head = a.head;
  if (head.empty()) head = init ? wner_model_head(init.get()) : (a.strategy == "sigmoid-weighted" ? "sigmoid" : "softmax");
  if (!init) {
    wner_model_options opts;
    wner_model_options_default(&opts);
    opts.head = head.c_str();
    opts.dim = a.dim;
    opts.radius = a.radius;
    opts.seed = a.seed;
    wner_model* m = nullptr;
    Check(wner_model_create(inv.get(), train.get(), &opts, &m));
    init.reset(m);
  }

  wner_train_config config;
  wner_train_config_default(&config);
  config.strategy = a.strategy.c_str();
  config.batch_size = a.batch_size;
  config.epochs = a.epochs;
  config.learning_rate = a.lr;
  config.seed = a.seed;
  config.select_class = OrNull(a.select_class);
  PrintConfig("train", {{"train", a.train},
                        {"dev", a.dev},
                        {"strategy", a.strategy},
                        {"head", wner_model_head(init.get())},
                        {"init", a.init},
                        {"dim", a.dim},
                        {"radius", a.radius},
                        {"batch_size", a.batch_size},
                        {"epochs", a.epochs},
                        {"lr", a.lr},
                        {"beta1", config.beta1},
                        {"beta2", config.beta2},
                        {"epsilon", config.epsilon},
                        {"seed", a.seed},
                        {"select_class", a.select_class},
                        {"out", a.out}});

  wner_model* best = nullptr;
  std::size_t best_epoch = 0;
  char* log = nullptr;
  Check(wner_train(train.get(), dev.get(), init.get(), &config, &best, &best_epoch, &log));
  Handle<wner_model> model(best);
  const std::string log_text = Take(log);
  Check(wner_model_save(model.get(), a.out.c_str()));
  if (!a.log.empty()) WriteText(a.log, log_text);
  std::cout << "best epoch " << best_epoch << "\n";
}

// --- eval / baseline -------------------------------------------------------------

struct EvalArgs {
  std::vector<std::string> models, tests;
  std::string only_class, json_out, baseline_dict, kept;
};

struct Row {
  std::string model, dataset;
  Handle<wner_report> report;
};

std::string RenderReports(const std::vector<Row>& rows, const std::string& only_class,
                          const std::string& json_out) {
  std::vector<const wner_report*> reports;
  std::vector<const char*> models, datasets;
  std::string jsonl;
  for (const auto& r : rows) {
    reports.push_back(r.report.get());
    models.push_back(r.model.c_str());
    datasets.push_back(r.dataset.c_str());
    char* j = nullptr;
    Check(wner_report_json(r.report.get(), &j));
    ordered_json line{{"model", r.model}, {"dataset", r.dataset},
                      {"report", ordered_json::parse(Take(j))}};
    jsonl += line.dump() + "\n";
  }
  if (!json_out.empty()) WriteText(json_out, jsonl);
  char* table = nullptr;
  Check(wner_report_table(reports.data(), models.data(), datasets.data(), rows.size(),
                          OrNull(only_class), &table));
  return Take(table);
}

void RunEval(const EvalArgs& a) {
  PrintConfig("eval", {{"models", a.models},
                       {"tests", a.tests},
                       {"class", a.only_class},
                       {"baseline_dict", a.baseline_dict},
                       {"kept", a.kept},
                       {"json_out", a.json_out}});
  if (!a.baseline_dict.empty() && (a.kept.empty() || a.only_class.empty())) {
    throw CliError(WNER_E_INVALID_ARGUMENT, "--baseline-dict needs --kept and --class");
  }
  std::vector<Row> rows;
  Handle<wner_inventory> first_inventory;
  for (const auto& path : a.models) {
    auto model = LoadModel(path);
    wner_inventory* i = nullptr;
    Check(wner_model_inventory(model.get(), &i));
    Handle<wner_inventory> inv(i);
    for (const auto& test_path : a.tests) {
      auto test = ReadCorpus(test_path, inv.get());
      wner_report* r = nullptr;
      Check(wner_evaluate(model.get(), test.get(), &r));
      rows.push_back({Stem(path), Stem(test_path), Handle<wner_report>(r)});
    }
    if (!first_inventory) first_inventory = std::move(inv);
  }
  if (!a.baseline_dict.empty()) {
    if (!first_inventory) throw CliError(WNER_E_INVALID_ARGUMENT, "the baseline row needs a model for its inventory");
    auto dict = LoadDict(a.baseline_dict);
    auto kept = LoadArticleSet(a.kept);
    for (const auto& test_path : a.tests) {
      auto gold = ReadCorpus(test_path, first_inventory.get());
      wner_report* r = nullptr;
      Check(wner_baseline(gold.get(), dict.get(), kept.get(), first_inventory.get(),
                          a.only_class.c_str(), &r));
      rows.push_back({"baseline", Stem(test_path), Handle<wner_report>(r)});
    }
  }
  std::cout << RenderReports(rows, a.only_class, a.json_out);
}

struct PredictArgs {
  std::string model, in, out;
};

void RunPredict(const PredictArgs& a) {
  PrintConfig("predict", {{"model", a.model}, {"in", a.in}, {"out", a.out}});
  auto model = LoadModel(a.model);
  wner_inventory* i = nullptr;
  Check(wner_model_inventory(model.get(), &i));
  Handle<wner_inventory> inv(i);
  auto corpus = ReadCorpus(a.in, inv.get());
  wner_corpus* p = nullptr;
  Check(wner_predict(model.get(), corpus.get(), &p));
  Handle<wner_corpus> predicted(p);
  Check(wner_corpus_write(predicted.get(), a.out.c_str(), inv.get()));
  std::cout << "sentences " << wner_corpus_size(predicted.get()) << "\n";
}

struct BaselineArgs {
  std::string dict, kept, gold, classes, class_name, json_out;
};

void RunBaseline(const BaselineArgs& a) {
  PrintConfig("baseline", {{"dict", a.dict},
                           {"kept", a.kept},
                           {"gold", a.gold},
                           {"classes", a.classes},
                           {"class", a.class_name},
                           {"json_out", a.json_out}});
  auto inv = ParseInventory(a.classes);
  auto dict = LoadDict(a.dict);
  auto kept = LoadArticleSet(a.kept);
  auto gold = ReadCorpus(a.gold, inv.get());
  wner_report* r = nullptr;
  Check(wner_baseline(gold.get(), dict.get(), kept.get(), inv.get(), a.class_name.c_str(), &r));
  std::vector<Row> rows;
  rows.push_back({"baseline", Stem(a.gold), Handle<wner_report>(r)});
  std::cout << RenderReports(rows, a.class_name, a.json_out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partially annotated NER corpora from encyclopedia dumps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wner_version()));
  std::function<void()> run;

  const std::string kClassesHelp = "class inventory, e.g. PER:legacy,LOC:legacy,FOOD:new";

  SynthArgs synth;
  auto* c = app.add_subcommand("synth", "write a synthetic dump, gold set, legacy corpus and gazetteer");
  c->add_option("--out", synth.out, "output directory")->required();
  c->add_option("--seed", synth.seed, "generator seed")->capture_default_str();
  c->add_option("--sentences", synth.sentences, "dump sentences")->capture_default_str();
  c->callback([&] { run = [&] { RunSynth(synth); }; });

  IngestArgs ingest;
  c = app.add_subcommand("ingest", "parse a dump into article and graph files");
  c->add_option("--dump", ingest.dump, "line-delimited JSON dump")->required();
  c->add_option("--articles", ingest.articles, "articles output")->required();
  c->add_option("--graph", ingest.graph, "category graph output")->required();
  c->callback([&] { run = [&] { RunIngest(ingest); }; });

  CurateArgs curate;
  c = app.add_subcommand("curate", "walk the category graph and pick the class articles");
  c->add_option("--graph", curate.graph, "category graph")->required();
  c->add_option("--start", curate.start, "start category")->required();
  c->add_option("--class", curate.class_name, "class name")->required();
  c->add_option("--log", curate.log, "decision log, resumed when it exists");
  c->add_option("--out", curate.out, "article id list to write when finished");
  c->add_flag("--tty", curate.tty, "prompt on the terminal");
  c->add_flag("--serve", curate.serve, "serve the HTTP API");
  c->add_option("--host", curate.host, "bind address")->capture_default_str();
  c->add_option("--port", curate.port, "port, 0 picks one")->capture_default_str();
  c->add_option("--static-dir", curate.static_dir, "browser UI files served at /");
  c->callback([&] { run = [&] { RunCurate(curate); }; });

  BuildDictArgs build_dict;
  c = app.add_subcommand("build-dict", "alias dictionary from titles and link anchors");
  c->add_option("--articles", build_dict.articles, "articles file")->required();
  c->add_option("--out", build_dict.out, "dictionary output")->required();
  c->callback([&] { run = [&] { RunBuildDict(build_dict); }; });

  BuildCorpusArgs build_corpus;
  c = app.add_subcommand("build-corpus", "partially annotated corpus for one new class");
  c->add_option("--articles", build_corpus.articles, "articles file")->required();
  c->add_option("--dict", build_corpus.dict, "alias dictionary")->required();
  c->add_option("--kept", build_corpus.kept, "class article ids")->required();
  c->add_option("--classes", build_corpus.classes, kClassesHelp)->required();
  c->add_option("--class", build_corpus.class_name, "the new class")->required();
  c->add_option("--gazetteer", build_corpus.gazetteer, "auxiliary gazetteer");
  c->add_option("--out", build_corpus.out, "extended CoNLL output")->required();
  c->add_option("--stats", build_corpus.stats, "statistics table output");
  c->callback([&] { run = [&] { RunBuildCorpus(build_corpus); }; });

  MaskLegacyArgs mask;
  c = app.add_subcommand("mask-legacy", "mask possible new-class mentions in a legacy corpus");
  c->add_option("--in", mask.in, "CoNLL input")->required();
  c->add_option("--out", mask.out, "extended CoNLL output")->required();
  c->add_option("--dict", mask.dict, "alias dictionary")->required();
  c->add_option("--kept", mask.kept, "class article ids")->required();
  c->add_option("--classes", mask.classes, kClassesHelp)->required();
  c->add_option("--gazetteer", mask.gazetteer, "auxiliary gazetteer");
  c->callback([&] { run = [&] { RunMaskLegacy(mask); }; });

  SplitMergeArgs split;
  c = app.add_subcommand("split-merge", "split the wiki corpus and merge it with legacy splits");
  c->add_option("--wiki", split.wiki, "wiki corpus")->required();
  c->add_option("--legacy-train", split.legacy_train, "masked legacy train split");
  c->add_option("--legacy-dev", split.legacy_dev, "masked legacy dev split");
  c->add_option("--legacy-test", split.legacy_test, "masked legacy test split");
  c->add_option("--classes", split.classes, kClassesHelp)->required();
  c->add_option("--seed", split.seed, "shuffle seed")->capture_default_str();
  c->add_option("--ratios", split.ratios, "train dev test ratios")->expected(3)->capture_default_str();
  c->add_option("--out-dir", split.out_dir, "directory for train/dev/test.conll")->required();
  c->callback([&] { run = [&] { RunSplitMerge(split); }; });

  HoldoutArgs holdout;
  c = app.add_subcommand("holdout", "set sentences aside for manual gold annotation");
  c->add_option("--in", holdout.in, "corpus")->required();
  c->add_option("--classes", holdout.classes, kClassesHelp)->required();
  c->add_option("-n", holdout.n, "sentences to hold out")->capture_default_str();
  c->add_option("--seed", holdout.seed, "shuffle seed")->capture_default_str();
  c->add_option("--held-out", holdout.held_out, "held-out output")->required();
  c->add_option("--remainder", holdout.remainder, "remaining sentences output")->required();
  c->callback([&] { run = [&] { RunHoldout(holdout); }; });

  TrainArgs train;
  c = app.add_subcommand("train", "train a tagger with dev-based model selection");
  c->add_option("--train", train.train, "training corpus")->required();
  c->add_option("--dev", train.dev, "dev corpus")->required();
  c->add_option("--classes", train.classes, kClassesHelp);
  c->add_option("--strategy", train.strategy, "softmax | softmax-weighted | sigmoid-weighted")
      ->capture_default_str();
  c->add_option("--head", train.head, "softmax | sigmoid (default follows the strategy)");
  c->add_option("--init", train.init, "checkpoint to start from");
  c->add_option("--dim", train.dim, "embedding and hidden size")->capture_default_str();
  c->add_option("--radius", train.radius, "context window radius")->capture_default_str();
  c->add_option("--batch-size", train.batch_size, "sentences per step")->capture_default_str();
  c->add_option("--epochs", train.epochs, "passes over the training set")->capture_default_str();
  c->add_option("--lr", train.lr, "Adam learning rate")->capture_default_str();
  c->add_option("--seed", train.seed, "init and shuffle seed")->capture_default_str();
  c->add_option("--select-class", train.select_class, "select on this class's dev F1");
  c->add_option("--out", train.out, "checkpoint output")->required();
  c->add_option("--log", train.log, "per-epoch JSON lines");
  c->callback([&] { run = [&] { RunTrain(train); }; });

  EvalArgs eval;
  c = app.add_subcommand("eval", "span-level P/R/F1 of checkpoints on test sets");
  c->add_option("--model", eval.models, "checkpoint (repeatable)")->required();
  c->add_option("--test", eval.tests, "test corpus (repeatable)")->required();
  c->add_option("--class", eval.only_class, "report only this class");
  c->add_option("--baseline-dict", eval.baseline_dict, "add a dictionary baseline row");
  c->add_option("--kept", eval.kept, "class article ids for the baseline");
  c->add_option("--json-out", eval.json_out, "reports as JSON lines");
  c->callback([&] { run = [&] { RunEval(eval); }; });

  PredictArgs predict;
  c = app.add_subcommand("predict", "label a corpus with a checkpoint");
  c->add_option("--model", predict.model, "checkpoint")->required();
  c->add_option("--in", predict.in, "input corpus")->required();
  c->add_option("--out", predict.out, "predicted corpus")->required();
  c->callback([&] { run = [&] { RunPredict(predict); }; });

  BaselineArgs baseline;
  c = app.add_subcommand("baseline", "dictionary baseline on a gold set");
  c->add_option("--dict", baseline.dict, "alias dictionary")->required();
  c->add_option("--kept", baseline.kept, "class article ids")->required();
  c->add_option("--gold", baseline.gold, "gold corpus")->required();
  c->add_option("--classes", baseline.classes, kClassesHelp)->required();
  c->add_option("--class", baseline.class_name, "the new class")->required();
  c->add_option("--json-out", baseline.json_out, "report as JSON lines");
  c->callback([&] { run = [&] { RunBaseline(baseline); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    run();
  } catch (const CliError& e) {
    std::cerr << "wikiner " << name << ": error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "wikiner " << name << ": error: " << e.what() << "\n";
    return WNER_E_INTERNAL;
  }
  return 0;
}
