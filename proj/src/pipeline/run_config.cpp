#include "pipeline/run_config.hpp"

#include <cstdio>
#include <set>

#include <json.hpp>

#include "common/errors.hpp"
#include "common/hash.hpp"

namespace testrec::pipeline {

using nlohmann::ordered_json;

void RunConfig::validate() const {
  model.validate();
  for (double t : {method_threshold, test_threshold})
    if (!(t >= -1.0 && t <= 1.0)) throw UsageError("thresholds must lie in [-1, 1]");
  if (k == 0) throw UsageError("k must be >= 1");
  if (min_count == 0) throw UsageError("min_count must be >= 1");
  const auto& ex = preparation.extraction;
  if (ex.max_length < 2 || ex.max_contexts == 0)
    throw UsageError("max_length must be >= 2 and max_contexts >= 1");
  if (preparation.validation.max_depth == 0) throw UsageError("max_depth must be >= 1");
  if (paths.run_dir.empty()) throw UsageError("run_dir must not be empty");
}

std::filesystem::path RunConfig::vocab_path() const {
  return paths.vocab.empty() ? run_dir() / "vocab.bin" : std::filesystem::path(paths.vocab);
}
std::filesystem::path RunConfig::model_path() const {
  return paths.model.empty() ? run_dir() / "model.bin" : std::filesystem::path(paths.model);
}
std::filesystem::path RunConfig::store_path() const {
  return paths.store.empty() ? run_dir() / "store.bin" : std::filesystem::path(paths.store);
}

namespace {

ordered_json settings_json(const RunConfig& c) {
  ordered_json j;
  const auto& m = c.model;
  j["model"] = {{"token_dim", m.token_dim},
                {"path_dim", m.path_dim},
                {"code_dim", m.code_dim},
                {"epochs", m.epochs},
                {"dropout_keep", m.dropout_keep},
                {"learning_rate", m.learning_rate},
                {"seed", m.seed},
                {"optimizer", std::string(model::to_string(m.optimizer))},
                {"holdout_fraction", m.holdout_fraction},
                {"init_range", m.init_range}};
  const auto& ex = c.preparation.extraction;
  j["extraction"] = {{"max_length", ex.max_length},
                     {"max_width", ex.max_width},
                     {"max_contexts", ex.max_contexts},
                     {"max_depth", c.preparation.validation.max_depth}};
  j["vocab"] = {{"min_count", c.min_count}};
  j["recommend"] = {{"method_threshold", c.method_threshold},
                    {"test_threshold", c.test_threshold},
                    {"k", c.k}};
  j["eval"] = {{"leave_one_out", c.leave_one_out},
               {"lev_mode", c.lev_mode == eval::LevMode::Token ? "token" : "character"}};
  return j;
}

class Reader {
 public:
  Reader(const ordered_json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
    if (!obj_.is_object()) throw UsageError("config: '" + where_ + "' must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const nlohmann::json::exception&) {
      throw UsageError("config: '" + where_ + "." + key + "' has the wrong type");
    }
  }

  const ordered_json* child(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key()))
        throw UsageError("config: unknown key '" + where_ + "." + it.key() + "'");
  }

 private:
  const ordered_json& obj_;
  std::string where_;
  std::set<std::string> seen_;
};

}  // namespace

std::string to_json(const RunConfig& c) {
  ordered_json j;
  j["paths"] = {{"corpus", c.paths.corpus},
                {"run_dir", c.paths.run_dir},
                {"vocab", c.paths.vocab},
                {"model", c.paths.model},
                {"store", c.paths.store}};
  j.update(settings_json(c));
  return j.dump(2);
}

RunConfig config_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config: malformed JSON: ") + e.what());
  }
  RunConfig c;
  Reader root(doc, "config");
  if (const auto* p = root.child("paths")) {
    Reader r(*p, "paths");
    r.get("corpus", c.paths.corpus);
    r.get("run_dir", c.paths.run_dir);
    r.get("vocab", c.paths.vocab);
    r.get("model", c.paths.model);
    r.get("store", c.paths.store);
    r.finish();
  }
  if (const auto* p = root.child("model")) {
    Reader r(*p, "model");
    auto& m = c.model;
    r.get("token_dim", m.token_dim);
    r.get("path_dim", m.path_dim);
    r.get("code_dim", m.code_dim);
    r.get("epochs", m.epochs);
    r.get("dropout_keep", m.dropout_keep);
    r.get("learning_rate", m.learning_rate);
    r.get("seed", m.seed);
    std::string opt(model::to_string(m.optimizer));
    r.get("optimizer", opt);
    m.optimizer = model::parse_optimizer(opt);
    r.get("holdout_fraction", m.holdout_fraction);
    r.get("init_range", m.init_range);
    r.finish();
  }
  if (const auto* p = root.child("extraction")) {
    Reader r(*p, "extraction");
    auto& ex = c.preparation.extraction;
    r.get("max_length", ex.max_length);
    r.get("max_width", ex.max_width);
    r.get("max_contexts", ex.max_contexts);
    r.get("max_depth", c.preparation.validation.max_depth);
    r.finish();
  }
  if (const auto* p = root.child("vocab")) {
    Reader r(*p, "vocab");
    r.get("min_count", c.min_count);
    r.finish();
  }
  if (const auto* p = root.child("recommend")) {
    Reader r(*p, "recommend");
    r.get("method_threshold", c.method_threshold);
    r.get("test_threshold", c.test_threshold);
    r.get("k", c.k);
    r.finish();
  }
  if (const auto* p = root.child("eval")) {
    Reader r(*p, "eval");
    r.get("leave_one_out", c.leave_one_out);
    std::string mode = c.lev_mode == eval::LevMode::Token ? "token" : "character";
    r.get("lev_mode", mode);
    if (mode == "token")
      c.lev_mode = eval::LevMode::Token;
    else if (mode == "character")
      c.lev_mode = eval::LevMode::Character;
    else
      throw UsageError("config: eval.lev_mode must be 'character' or 'token'");
    r.finish();
  }
  root.finish();
  c.validate();
  return c;
}

std::uint64_t config_hash(const RunConfig& c) { return fnv1a64(settings_json(c).dump()); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace testrec::pipeline
