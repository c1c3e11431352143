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

/* C interface to libwikiner.
 *
 * Objects are opaque handles released with their *_free function (NULL is
 * accepted). Every function returning wner_status leaves a message for
 * wner_last_error() on failure; the message is per thread and stays valid
 * until the next failing call on that thread. Strings returned through
 * char** are owned by the caller and released with wner_string_free. */
#ifndef WIKINER_WIKINER_H_
#define WIKINER_WIKINER_H_

#include <stddef.h>
#include <stdint.h>

#if defined(WNER_BUILDING_LIBRARY)
#define WNER_API __attribute__((visibility("default")))
#else
#define WNER_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wner_status {
  WNER_OK = 0,
  WNER_E_INVALID_ARGUMENT = 1,
  WNER_E_PARSE = 2,
  WNER_E_IO = 3,
  WNER_E_STATE = 4,
  WNER_E_NUMERIC = 5,
  WNER_E_NOT_FOUND = 6,
  WNER_E_EXTERNAL = 7,
  WNER_E_INTERNAL = 99
} wner_status;

typedef struct wner_inventory wner_inventory;
typedef struct wner_wiki wner_wiki;
typedef struct wner_session wner_session;
typedef struct wner_server wner_server;
typedef struct wner_dict wner_dict;
typedef struct wner_article_set wner_article_set;
typedef struct wner_gazetteer wner_gazetteer;
typedef struct wner_corpus wner_corpus;
typedef struct wner_model wner_model;
typedef struct wner_report wner_report;

WNER_API const char* wner_version(void);
WNER_API const char* wner_last_error(void);
WNER_API void wner_string_free(char* s);

/* Class inventory: comma-separated legacy and new class names. NULL is an
 * empty list. */
WNER_API wner_status wner_inventory_create(const char* legacy_csv, const char* new_csv,
                                           wner_inventory** out);
/* "PER:legacy,FOOD:new" */
WNER_API wner_status wner_inventory_parse(const char* text, wner_inventory** out);
WNER_API wner_status wner_inventory_serialize(const wner_inventory* inv, char** out);
WNER_API size_t wner_inventory_label_count(const wner_inventory* inv);
WNER_API void wner_inventory_free(wner_inventory* inv);

/* Wiki dump: articles plus category graph. */
WNER_API wner_status wner_wiki_parse_dump(const char* dump_path, wner_wiki** out);
WNER_API wner_status wner_wiki_save(const wner_wiki* wiki, const char* articles_path,
                                    const char* graph_path);
/* Either path may be NULL (not both). */
WNER_API wner_status wner_wiki_load(const char* articles_path, const char* graph_path,
                                    wner_wiki** out);
WNER_API size_t wner_wiki_article_count(const wner_wiki* wiki);
WNER_API size_t wner_wiki_category_count(const wner_wiki* wiki);
WNER_API void wner_wiki_free(wner_wiki* wiki);

/* Curator session. log_path may be NULL; an existing log is resumed. */
WNER_API wner_status wner_session_open(const wner_wiki* wiki, const char* start_category,
                                       const char* class_name, const char* log_path,
                                       wner_session** out);
WNER_API wner_status wner_session_state_json(wner_session* s, char** out);
WNER_API wner_status wner_session_next_json(wner_session* s, char** out);
/* decision: keep_all | keep_category_only | skip */
WNER_API wner_status wner_session_decide(wner_session* s, const char* category,
                                         const char* decision, char** out_json);
WNER_API wner_status wner_session_decide_json(wner_session* s, const char* body,
                                              char** out_json);
WNER_API wner_status wner_session_export_json(wner_session* s, char** out);
WNER_API wner_status wner_session_export(wner_session* s, wner_article_set** out);
WNER_API void wner_session_free(wner_session* s);

/* HTTP front end for a session. The session must outlive the server. */
WNER_API wner_status wner_server_create(wner_session* s, const char* static_dir,
                                        wner_server** out);
/* port 0 picks a free port; the bound port is stored in *bound_port. */
WNER_API wner_status wner_server_bind(wner_server* srv, const char* host, int port,
                                      int* bound_port);
WNER_API wner_status wner_server_listen(wner_server* srv); /* blocks */
WNER_API void wner_server_stop(wner_server* srv);          /* any thread */
WNER_API void wner_server_free(wner_server* srv);

/* Article ids, one per line in files. */
WNER_API wner_status wner_article_set_load(const char* path, wner_article_set** out);
WNER_API wner_status wner_article_set_save(const wner_article_set* set, const char* path);
WNER_API size_t wner_article_set_size(const wner_article_set* set);
WNER_API void wner_article_set_free(wner_article_set* set);

/* Alias dictionary. */
WNER_API wner_status wner_dict_build(const wner_wiki* wiki, wner_dict** out);
WNER_API wner_status wner_dict_save(const wner_dict* dict, const char* path);
WNER_API wner_status wner_dict_load(const char* path, wner_dict** out);
WNER_API size_t wner_dict_alias_count(const wner_dict* dict);
WNER_API void wner_dict_free(wner_dict* dict);

/* Gazetteer auxiliary tagger: CLASS<TAB>name lines. */
WNER_API wner_status wner_gazetteer_load(const char* path, wner_gazetteer** out);
WNER_API void wner_gazetteer_free(wner_gazetteer* gaz);

/* Sentences in extended CoNLL (plain CoNLL 2003 is read as fully
 * supervised). */
WNER_API wner_status wner_corpus_read(const char* path, const wner_inventory* inv,
                                      wner_corpus** out);
WNER_API wner_status wner_corpus_write(const wner_corpus* corpus, const char* path,
                                       const wner_inventory* inv);
WNER_API size_t wner_corpus_size(const wner_corpus* corpus);
WNER_API void wner_corpus_free(wner_corpus* corpus);

/* Wiki corpus for class_name. gazetteer may be NULL. stats_table receives
 * a printable statistics table when non-NULL. */
WNER_API wner_status wner_build_wiki_corpus(const wner_wiki* wiki, const wner_dict* dict,
                                            const wner_inventory* inv, const char* class_name,
                                            const wner_article_set* class_articles,
                                            const wner_gazetteer* gazetteer,
                                            wner_corpus** out, char** stats_table);
WNER_API wner_status wner_mask_legacy(const wner_corpus* legacy, const wner_dict* dict,
                                      const wner_inventory* inv,
                                      const wner_article_set* class_articles,
                                      const wner_gazetteer* gazetteer, wner_corpus** out);
/* Legacy corpora may be NULL. */
WNER_API wner_status wner_split_merge(const wner_corpus* wiki, const wner_corpus* legacy_train,
                                      const wner_corpus* legacy_dev,
                                      const wner_corpus* legacy_test, uint64_t seed,
                                      double train_ratio, double dev_ratio, double test_ratio,
                                      wner_corpus** train, wner_corpus** dev,
                                      wner_corpus** test);
WNER_API wner_status wner_holdout(const wner_corpus* corpus, size_t n, uint64_t seed,
                                  const wner_inventory* inv, wner_corpus** held_out,
                                  wner_corpus** remainder);

/* Tagger. head: softmax | sigmoid. The vocabulary comes from vocab_corpus. */
typedef struct wner_model_options {
  const char* head;
  size_t dim;
  size_t radius;
  uint64_t seed;
} wner_model_options;

WNER_API void wner_model_options_default(wner_model_options* opts);
WNER_API wner_status wner_model_create(const wner_inventory* inv, const wner_corpus* vocab_corpus,
                                       const wner_model_options* opts, wner_model** out);
WNER_API wner_status wner_model_save(const wner_model* model, const char* path);
WNER_API wner_status wner_model_load(const char* path, wner_model** out);
WNER_API const char* wner_model_head(const wner_model* model);
WNER_API wner_status wner_model_inventory(const wner_model* model, wner_inventory** out);
WNER_API void wner_model_free(wner_model* model);

/* strategy: softmax | softmax-weighted | sigmoid-weighted. select_class may
 * be NULL (micro F1 over all classes). */
typedef struct wner_train_config {
  const char* strategy;
  size_t batch_size;
  size_t epochs;
  double learning_rate;
  double beta1;
  double beta2;
  double epsilon;
  uint64_t seed;
  const char* select_class;
} wner_train_config;

WNER_API void wner_train_config_default(wner_train_config* config);
/* log_jsonl receives one JSON object per epoch when non-NULL. */
WNER_API wner_status wner_train(const wner_corpus* train, const wner_corpus* dev,
                                const wner_model* init, const wner_train_config* config,
                                wner_model** best, size_t* best_epoch, char** log_jsonl);

/* Span-level evaluation. */
WNER_API wner_status wner_evaluate(const wner_model* model, const wner_corpus* test,
                                   wner_report** out);
/* Copy of `corpus` whose labels are the model's decoded predictions,
 * fully supervised. */
WNER_API wner_status wner_predict(const wner_model* model, const wner_corpus* corpus,
                                  wner_corpus** out);
WNER_API wner_status wner_baseline(const wner_corpus* gold, const wner_dict* dict,
                                   const wner_article_set* class_articles,
                                   const wner_inventory* inv, const char* class_name,
                                   wner_report** out);
WNER_API wner_status wner_report_json(const wner_report* report, char** out);
/* Class P/R/F1; class_name NULL gives the micro average. */
WNER_API wner_status wner_report_scores(const wner_report* report, const char* class_name,
                                        double* precision, double* recall, double* f1);
/* Table with one row per model and a block per dataset. only_class may be
 * NULL. */
WNER_API wner_status wner_report_table(const wner_report* const* reports,
                                       const char* const* model_names,
                                       const char* const* dataset_names, size_t n,
                                       const char* only_class, char** out);
WNER_API void wner_report_free(wner_report* report);

/* Synthetic encyclopedia with a FOOD-like class written under out_dir. */
WNER_API wner_status wner_synth_generate(uint64_t seed, size_t sentences, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* WIKINER_WIKINER_H_ */
