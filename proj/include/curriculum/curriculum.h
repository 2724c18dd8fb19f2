/*
 * Copyright 2026 The cgraph Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef CURRICULUM_CURRICULUM_H
#define CURRICULUM_CURRICULUM_H

/*
 * C interface to the curriculum-graph engine.
 *
 * Objects are opaque handles released with their matching *_free function.
 * Every fallible call returns a cg_status; on failure the calling thread's
 * last error (code and message) describes what went wrong. Strings returned
 * through char** out-parameters are heap allocated and must be released
 * with cg_string_free. List results are newline-terminated records.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CG_BUILDING_LIBRARY)
#define CG_API __declspec(dllexport)
#else
#define CG_API __declspec(dllimport)
#endif
#else
#define CG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_USAGE = 1,
  CG_ERR_VALIDATION = 2,
  CG_ERR_IO = 3,
  CG_ERR_CONSTRAINT = 4,
  CG_ERR_INTERNAL = 5
} cg_status;

typedef struct cg_graph cg_graph;
typedef struct cg_closure cg_closure;
typedef struct cg_popularity cg_popularity;
typedef struct cg_content cg_content;
typedef struct cg_exercises cg_exercises;
typedef struct cg_progress cg_progress;
typedef struct cg_plan cg_plan;
typedef struct cg_service cg_service;

/* ---- errors and memory ---- */

CG_API const char* cg_version(void);
CG_API const char* cg_status_name(cg_status status);
/* Machine-readable code of the last failure on this thread, e.g. "CYCLE". */
CG_API const char* cg_last_error_code(void);
CG_API const char* cg_last_error_message(void);
/* Extra detail lines (validation findings, choice points), may be "". */
CG_API const char* cg_last_error_detail(void);
CG_API void cg_string_free(char* s);

/* ---- graphs ---- */

/* Native or GraphML file (sniffed). Fails unless the graph validates. */
CG_API cg_status cg_graph_load(const char* path, cg_graph** out);
/* Native text. Fails unless the graph validates. */
CG_API cg_status cg_graph_parse(const char* text, cg_graph** out);
/*
 * yEd GraphML. colors: NULL or "#rrggbb=kind,...[,nearest]". discipline:
 * NULL for the default. warnings: one "code<TAB>ids<TAB>message" per line.
 */
CG_API cg_status cg_graph_import_graphml(const char* xml, const char* colors,
                                         const char* discipline, int ids_from_labels,
                                         cg_graph** out, char** warnings);
CG_API void cg_graph_free(cg_graph* g);

CG_API const char* cg_graph_discipline(const cg_graph* g);
CG_API size_t cg_graph_node_count(const cg_graph* g);
CG_API size_t cg_graph_edge_count(const cg_graph* g);
CG_API cg_status cg_graph_write_native(const cg_graph* g, char** out);
/* Lines "<tail> <head> <kind>[:<group>]". */
CG_API cg_status cg_graph_predecessors(const cg_graph* g, const char* id, char** out);
CG_API cg_status cg_graph_successors(const cg_graph* g, const char* id, char** out);

/*
 * Parses native text and reports every finding without requiring validity:
 * "nodes<TAB>n", "edges<TAB>m", then "error|warning<TAB>code<TAB>line<TAB>
 * ids<TAB>message". Syntax errors fail with CG_ERR_VALIDATION.
 */
CG_API cg_status cg_validate_text(const char* text, char** report, size_t* error_count);

/* cross_text: "cross <tail> -> <head>" lines, may be NULL. */
CG_API cg_status cg_graph_merge(const cg_graph* const* graphs, size_t count,
                                const char* cross_text, const char* discipline, cg_graph** out);

/* ---- closures ---- */

typedef struct cg_closure_request {
  const char* targets;   /* comma-separated node ids */
  int include_optional;  /* follow optional edges */
  const char* policy;    /* "minimal" (NULL), "preferred" or "explicit" */
  const char* preferred; /* comma list of preferred tails */
  const char* choices;   /* "group=tail,..." pinned choices */
} cg_closure_request;

/* CG_ERR_CONSTRAINT with code UNRESOLVED_CHOICE when explicit choices are
 * incomplete; the error detail lists "group<TAB>head<TAB>tail:size,..." */
CG_API cg_status cg_closure_compute(const cg_graph* g, const cg_closure_request* req,
                                    cg_closure** out);
CG_API void cg_closure_free(cg_closure* c);
/* Comma-joined ascending node ids. */
CG_API cg_status cg_closure_nodes(const cg_closure* c, char** out);
/* Lines "group<TAB>id<TAB>tail" and "skipped<TAB>tail<TAB>head". */
CG_API cg_status cg_closure_describe(const cg_closure* c, char** out);
/* One comma-joined node list per distinct closure. */
CG_API cg_status cg_closure_enumerate(const cg_graph* g, const cg_closure_request* req,
                                      size_t cap, char** out, int* truncated);

/* ---- orders ---- */

CG_API cg_status cg_order_topological(const cg_closure* c, char** out);
CG_API cg_status cg_order_enumerate(const cg_closure* c, size_t cap, char** out, int* truncated);
CG_API cg_status cg_order_count(const cg_closure* c, uint64_t cap, uint64_t* count, int* exact);
/* detail: "" when valid, else the reason. */
CG_API cg_status cg_order_check(const cg_closure* c, const char* order_csv, int* valid,
                                char** detail);

/* ---- popularity and ranking ---- */

CG_API cg_status cg_popularity_new(cg_popularity** out);
/* A missing file yields an empty store. */
CG_API cg_status cg_popularity_load(const char* path, cg_popularity** out);
CG_API cg_status cg_popularity_save(const cg_popularity* p, const char* path);
CG_API cg_status cg_popularity_record(cg_popularity* p, const char* order_csv);
CG_API void cg_popularity_free(cg_popularity* p);

/* weights: "t,p,c" or NULL. Lines "total<TAB>time<TAB>popularity<TAB>
 * coherence<TAB>order_csv", best first. */
CG_API cg_status cg_rank(const cg_graph* g, const cg_closure* c, size_t cap, const char* weights,
                         const cg_popularity* pop, char** out, int* truncated);

/* ---- content, exercises, books ---- */

CG_API cg_status cg_content_load(const char* manifest_path, cg_content** out);
CG_API cg_status cg_content_new(cg_content** out);
CG_API void cg_content_free(cg_content* c);

CG_API cg_status cg_exercises_load(const char* path, const cg_graph* g, cg_exercises** out);
CG_API cg_status cg_exercises_new(cg_exercises** out);
CG_API void cg_exercises_free(cg_exercises* e);

typedef struct cg_plan_meta {
  const char* title;       /* NULL: graph title or discipline */
  const char* author_role; /* "teacher" (NULL) or "student" */
  int64_t created_at;      /* epoch seconds */
  const char* stubs;       /* comma list of reference stubs, may be NULL */
} cg_plan_meta;

/* order_csv NULL: deterministic topological order. */
CG_API cg_status cg_plan_assemble(const cg_graph* g, const cg_closure* c, const char* order_csv,
                                  const cg_exercises* ex, const cg_content* content,
                                  const cg_plan_meta* meta, cg_plan** out);
CG_API cg_status cg_plan_load(const char* manifest_text, const cg_graph* g, cg_plan** out);
CG_API void cg_plan_free(cg_plan* p);
CG_API const char* cg_plan_id(const cg_plan* p);
CG_API cg_status cg_plan_manifest(const cg_plan* p, char** out);
/* Lines "topic<TAB>id" / "exercise<TAB>id" / "omitted<TAB>id<TAB>missing". */
CG_API cg_status cg_plan_items(const cg_plan* p, char** out);
CG_API cg_status cg_plan_render(const cg_graph* g, const cg_plan* p, const cg_content* content,
                                char** out);
/* Rejections fail with CG_ERR_CONSTRAINT (ORDER_VIOLATION,
 * MISSING_PREREQUISITE) or CG_ERR_USAGE (INVALID_EDIT); content may be NULL. */
CG_API cg_status cg_plan_edit(const cg_graph* g, const cg_plan* p, const char* ops_text,
                              const cg_content* content, cg_plan** out);

/* ---- progress and review books ---- */

CG_API cg_status cg_progress_load(const char* path, cg_progress** out);
CG_API cg_status cg_progress_new(const char* student, cg_progress** out);
CG_API cg_status cg_progress_update(cg_progress* p, const cg_graph* g, const char* node,
                                    const char* status, int64_t now);
CG_API cg_status cg_progress_text(const cg_progress* p, char** out);
CG_API void cg_progress_free(cg_progress* p);

/* req->targets is ignored; gaps_csv names the gap targets. out_closure holds
 * the full (re-taught) nodes; stubs_csv the mastered prerequisites kept as
 * references. */
CG_API cg_status cg_review(const cg_graph* g, const cg_progress* p, const char* gaps_csv,
                           const cg_closure_request* req, int override_status,
                           cg_closure** out_closure, char** order_csv, char** stubs_csv);

/* ---- interop ---- */

/* Lines "STATUS<TAB>tail<TAB>head<TAB>deadline<TAB>detail". */
CG_API cg_status cg_sync_report(const cg_graph* merged, const char* orders_text,
                                const char* calendar_text, char** out);
/* Lines "direct<TAB>ids", "unknown<TAB>tags", "closure<TAB>ids". */
CG_API cg_status cg_tags_lookup(const cg_graph* g, const char* index_text, const char* tags_csv,
                                char** out);
/* report: per form "form<TAB>STATUS<TAB>direct ids<TAB>unknown tags<TAB>
 * exercise id". exercises: exercise-file text (make_exercises only). */
CG_API cg_status cg_tags_process_export(const cg_graph* g, const char* index_text,
                                        const char* export_text, int make_exercises,
                                        char** report, char** exercises);

/* ---- service ---- */

CG_API cg_status cg_service_open(const char* data_dir, cg_service** out);
/* port 0 picks a free port; bound_port receives the port in use. */
CG_API cg_status cg_service_bind(cg_service* s, const char* host, int port, int* bound_port);
/* Blocks until cg_service_stop. */
CG_API cg_status cg_service_run(cg_service* s);
CG_API void cg_service_stop(cg_service* s);
/* In-process request, bypassing the network. */
CG_API cg_status cg_service_handle(cg_service* s, const char* method, const char* path,
                                   const char* body, int* http_status, char** response);
CG_API void cg_service_free(cg_service* s);

#ifdef __cplusplus
}
#endif

#endif /* CURRICULUM_CURRICULUM_H */
