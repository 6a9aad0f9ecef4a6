#include "testrec/testrec.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "common/errors.hpp"
#include "pipeline/commands.hpp"

struct tr_config {
  testrec::pipeline::RunConfig value;
};

struct tr_engine {
  testrec::pipeline::RunConfig config;
  testrec::pipeline::Artifacts artifacts;
};

namespace {

using namespace testrec;

thread_local std::string last_error;

tr_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return TR_E_USAGE;
    case ErrorKind::Io: return TR_E_IO;
    case ErrorKind::Lex:
    case ErrorKind::Parse:
    case ErrorKind::ParseReject: return TR_E_PARSE;
    case ErrorKind::Format: return TR_E_FORMAT;
    case ErrorKind::VocabMismatch:
    case ErrorKind::ModelMismatch: return TR_E_MISMATCH;
    case ErrorKind::MissingArtifact: return TR_E_MISSING_ARTIFACT;
    case ErrorKind::EmptyBag:
    case ErrorKind::EmptyCorpus:
    case ErrorKind::NoPairs: return TR_E_EMPTY;
    case ErrorKind::ZeroVector:
    case ErrorKind::DegenerateSample: return TR_E_DEGENERATE;
    case ErrorKind::Internal: return TR_E_INTERNAL;
  }
  return TR_E_INTERNAL;
}

template <typename F>
tr_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return TR_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TR_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TR_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw UsageError(std::string(what) + " must not be NULL");
}

void put(char** out, const std::string& s) {
  if (out != nullptr) *out = dup(s);
}

recommend::Approach approach_of(tr_approach a) {
  if (a == TR_APPROACH_FUNCTIONALITY) return recommend::Approach::Functionality;
  if (a == TR_APPROACH_STRUCTURE) return recommend::Approach::Structure;
  throw UsageError("approach must be 1 or 2");
}

}  // namespace

extern "C" {

const char* tr_version(void) { return "1.0.0"; }

const char* tr_last_error(void) { return last_error.c_str(); }

const char* tr_status_name(tr_status s) {
  switch (s) {
    case TR_OK: return "ok";
    case TR_E_USAGE: return "usage";
    case TR_E_IO: return "io";
    case TR_E_PARSE: return "parse";
    case TR_E_FORMAT: return "format";
    case TR_E_MISMATCH: return "mismatch";
    case TR_E_MISSING_ARTIFACT: return "missing-artifact";
    case TR_E_EMPTY: return "empty";
    case TR_E_DEGENERATE: return "degenerate";
    case TR_E_INTERNAL: return "internal";
  }
  return "unknown";
}

int tr_exit_code(tr_status s) {
  switch (s) {
    case TR_OK: return 0;
    case TR_E_USAGE: return 1;
    case TR_E_INTERNAL: return 3;
    default: return 2;
  }
}

void tr_string_free(char* s) { std::free(s); }

tr_status tr_config_new(const char* json, tr_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto cfg = std::make_unique<tr_config>();
    if (json != nullptr) cfg->value = pipeline::config_from_json(json);
    *out = cfg.release();
  });
}

void tr_config_free(tr_config* config) { delete config; }

tr_status tr_config_to_json(const tr_config* config, char** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = dup(pipeline::to_json(config->value));
  });
}

tr_status tr_config_hash(const tr_config* config, uint64_t* out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = pipeline::config_hash(config->value);
  });
}

tr_status tr_cmd_ingest(const tr_config* config, char** summary) {
  return guarded([&] {
    require(config, "config");
    const auto s = pipeline::cmd_ingest(config->value);
    put(summary, nlohmann::ordered_json{{"lines", s.lines},
                                        {"accepted", s.accepted},
                                        {"rejected", s.rejected}}
                     .dump());
  });
}

tr_status tr_cmd_train(const tr_config* config, char** summary) {
  return guarded([&] {
    require(config, "config");
    const auto s = pipeline::cmd_train(config->value);
    put(summary, nlohmann::ordered_json{{"pairs", s.pairs},
                                        {"bags", s.bags},
                                        {"values", s.values},
                                        {"paths", s.paths},
                                        {"labels", s.labels},
                                        {"train_examples", s.report.train_examples},
                                        {"holdout_examples", s.report.holdout_examples},
                                        {"epoch_losses", s.report.epoch_losses},
                                        {"holdout_accuracy", s.report.holdout_accuracy}}
                     .dump());
  });
}

tr_status tr_cmd_embed(const tr_config* config, char** summary) {
  return guarded([&] {
    require(config, "config");
    const auto s = pipeline::cmd_embed(config->value);
    put(summary, nlohmann::ordered_json{{"pairs", s.pairs},
                                        {"entries", s.entries},
                                        {"dropped", s.dropped},
                                        {"dimension", s.dimension}}
                     .dump());
  });
}

tr_status tr_cmd_recommend(const tr_config* config, const char* query_source,
                           const char* query_id, tr_approach approach, int as_json,
                           char** out) {
  return guarded([&] {
    require(config, "config");
    require(query_source, "query_source");
    const auto r =
        pipeline::cmd_recommend(config->value, query_source, approach_of(approach));
    const std::string id = query_id ? query_id : "query";
    put(out, as_json ? recommend::to_json(id, r) : recommend::to_text(id, r));
  });
}

tr_status tr_cmd_eval(const tr_config* config, int approaches, char** report_text) {
  return guarded([&] {
    require(config, "config");
    if ((approaches & 3) == 0) throw UsageError("select at least one approach");
    const auto s = pipeline::cmd_eval(config->value, approaches & 1, approaches & 2);
    put(report_text, eval::report_text(s.report));
  });
}

tr_status tr_cmd_export_radar(const tr_config* config, const char* out_path) {
  return guarded([&] {
    require(config, "config");
    pipeline::cmd_export_radar(config->value, out_path ? out_path : "");
  });
}

tr_status tr_cmd_export_histogram(const tr_config* config, const char* out_path) {
  return guarded([&] {
    require(config, "config");
    pipeline::cmd_export_histogram(config->value, out_path ? out_path : "");
  });
}

tr_status tr_engine_open(const tr_config* config, tr_engine** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = nullptr;
    config->value.validate();
    *out = new tr_engine{config->value, pipeline::load_artifacts(config->value)};
  });
}

void tr_engine_free(tr_engine* engine) { delete engine; }

size_t tr_engine_dimension(const tr_engine* engine) {
  return engine ? engine->artifacts.store.dimension() : 0;
}

size_t tr_engine_pair_count(const tr_engine* engine) {
  return engine ? engine->artifacts.store.pair_count() : 0;
}

tr_status tr_engine_embed(const tr_engine* engine, const char* source, double* out,
                          size_t capacity, size_t* dimension) {
  return guarded([&] {
    require(engine, "engine");
    require(source, "source");
    const auto& a = engine->artifacts;
    const auto v = index::embed_source(source, "query", index::UnitKind::Method, a.model,
                                       a.vocab, engine->config.preparation);
    const auto n = static_cast<size_t>(v.values.size());
    if (dimension) *dimension = n;
    if (out == nullptr || capacity < n)
      throw UsageError("output buffer holds " + std::to_string(capacity) + " values, need " +
                       std::to_string(n));
    std::memcpy(out, v.values.data(), n * sizeof(double));
  });
}

tr_status tr_engine_recommend(const tr_engine* engine, const char* query_source,
                              tr_approach approach, char** json) {
  return guarded([&] {
    require(engine, "engine");
    require(query_source, "query_source");
    const auto& a = engine->artifacts;
    const auto r = recommend::recommend(approach_of(approach), query_source, a.store, a.model,
                                        a.vocab, engine->config.preparation,
                                        pipeline::recommend_options(engine->config));
    put(json, recommend::to_json("query", r));
  });
}

tr_status tr_cosine(const double* u, const double* v, size_t n, double* out) {
  return guarded([&] {
    require(u, "u");
    require(v, "v");
    require(out, "out");
    *out = index::cosine(std::span<const double>(u, n), std::span<const double>(v, n));
  });
}

tr_status tr_levenshtein(const char* a, const char* b, int token_mode, size_t* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = eval::source_distance(a, b, token_mode ? eval::LevMode::Token
                                                  : eval::LevMode::Character);
  });
}

}  // extern "C"
