/* C interface to the test recommendation toolkit.
 *
 * Every function returns a tr_status. On failure, tr_last_error() returns a
 * message for the calling thread; it stays valid until the next call on that
 * thread. Strings returned through char** out-parameters are owned by the
 * caller and must be released with tr_string_free.
 */
#ifndef TESTREC_TESTREC_H
#define TESTREC_TESTREC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TR_API __declspec(dllexport)
#else
#define TR_API __attribute__((visibility("default")))
#endif

typedef enum tr_status {
  TR_OK = 0,
  TR_E_USAGE = 1,             /* bad argument or configuration */
  TR_E_IO = 2,                /* file could not be read or written */
  TR_E_PARSE = 3,             /* snippet rejected (lex/parse/cleaning/empty bag) */
  TR_E_FORMAT = 4,            /* corrupt or unsupported artifact */
  TR_E_MISMATCH = 5,          /* vocabulary/model/store hashes disagree */
  TR_E_MISSING_ARTIFACT = 6,  /* an earlier command has not been run */
  TR_E_EMPTY = 7,             /* empty corpus, bag or population */
  TR_E_DEGENERATE = 8,        /* zero vector or degenerate sample */
  TR_E_INTERNAL = 9           /* invariant violation */
} tr_status;

typedef enum tr_approach {
  TR_APPROACH_FUNCTIONALITY = 1,
  TR_APPROACH_STRUCTURE = 2
} tr_approach;

typedef struct tr_config tr_config;
typedef struct tr_engine tr_engine;

TR_API const char* tr_version(void);
TR_API const char* tr_last_error(void);
TR_API const char* tr_status_name(tr_status status);
/* 0 ok, 1 usage, 2 data, 3 internal. */
TR_API int tr_exit_code(tr_status status);
TR_API void tr_string_free(char* s);

/* Configuration. json may be NULL for the defaults; missing keys keep
 * their defaults. */
TR_API tr_status tr_config_new(const char* json, tr_config** out);
TR_API void tr_config_free(tr_config* config);
TR_API tr_status tr_config_to_json(const tr_config* config, char** out);
TR_API tr_status tr_config_hash(const tr_config* config, uint64_t* out);

/* Pipeline commands. Summaries are JSON documents. */
TR_API tr_status tr_cmd_ingest(const tr_config* config, char** summary);
TR_API tr_status tr_cmd_train(const tr_config* config, char** summary);
TR_API tr_status tr_cmd_embed(const tr_config* config, char** summary);
/* as_json != 0 returns the JSON candidate list, otherwise a text report. */
TR_API tr_status tr_cmd_recommend(const tr_config* config, const char* query_source,
                                  const char* query_id, tr_approach approach, int as_json,
                                  char** out);
/* approaches: bit 0 approach 1, bit 1 approach 2. */
TR_API tr_status tr_cmd_eval(const tr_config* config, int approaches, char** report_text);
/* out_path may be NULL for the run directory default. */
TR_API tr_status tr_cmd_export_radar(const tr_config* config, const char* out_path);
TR_API tr_status tr_cmd_export_histogram(const tr_config* config, const char* out_path);

/* Loaded vocabulary, model and store for repeated queries. */
TR_API tr_status tr_engine_open(const tr_config* config, tr_engine** out);
TR_API void tr_engine_free(tr_engine* engine);
TR_API size_t tr_engine_dimension(const tr_engine* engine);
TR_API size_t tr_engine_pair_count(const tr_engine* engine);
/* Writes the code vector of `source` into out[0..capacity). *dimension
 * receives the vector length; TR_E_USAGE if capacity is too small. */
TR_API tr_status tr_engine_embed(const tr_engine* engine, const char* source, double* out,
                                 size_t capacity, size_t* dimension);
TR_API tr_status tr_engine_recommend(const tr_engine* engine, const char* query_source,
                                     tr_approach approach, char** json);

/* Utilities. */
TR_API tr_status tr_cosine(const double* u, const double* v, size_t n, double* out);
TR_API tr_status tr_levenshtein(const char* a, const char* b, int token_mode, size_t* out);

#ifdef __cplusplus
}
#endif

#endif
