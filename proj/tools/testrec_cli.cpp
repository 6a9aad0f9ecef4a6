// testrec command-line driver. Settings resolve as flags > config file >
// built-in defaults and are handed to the C API as one JSON document.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "testrec/testrec.h"

namespace {

using nlohmann::json;

struct Flags {
  std::string config_file;
  std::string corpus;
  std::string run_dir;
  std::uint64_t seed = 0;
  std::size_t epochs = 0;
  std::size_t token_dim = 0;
  std::size_t path_dim = 0;
  std::size_t code_dim = 0;
  double keep = 0;
  double lr = 0;
  std::string optimizer;
  double holdout = 0;
  std::uint64_t min_count = 0;
  std::size_t max_length = 0;
  std::size_t max_width = 0;
  std::size_t max_contexts = 0;
  std::uint32_t max_depth = 0;
  double tau_m = 0;
  double tau_t = 0;
  std::size_t k = 0;
  bool leave_one_out = true;
  std::string lev_mode;
  bool print_config = false;

  // recommend
  std::string query;
  std::string query_file;
  std::string query_id = "query";
  std::string approach = "1";
  bool as_json = false;

  // eval
  std::string eval_approach = "both";

  // export-*
  std::string out;
};

struct Override {
  CLI::Option* option;
  const char* section;
  const char* key;
  std::function<json()> value;
};

class Failure : public std::runtime_error {
 public:
  Failure(tr_status status, const std::string& what) : std::runtime_error(what), status(status) {}
  tr_status status;
};

void check(tr_status s) {
  if (s != TR_OK) throw Failure(s, tr_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  tr_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(TR_E_IO, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json default_config() {
  tr_config* cfg = nullptr;
  check(tr_config_new(nullptr, &cfg));
  char* text = nullptr;
  const tr_status s = tr_config_to_json(cfg, &text);
  tr_config_free(cfg);
  check(s);
  return json::parse(take(text));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recommend existing unit tests for Java-like methods via code embeddings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tr_version()));
  Flags f;

  app.add_option("-c,--config", f.config_file, "JSON run configuration")->check(CLI::ExistingFile);
  std::vector<Override> overrides;
  auto opt = [&](const char* name, auto& target, const char* section, const char* key,
                 const char* help) {
    CLI::Option* o = app.add_option(name, target, help);
    overrides.push_back({o, section, key, [&target] { return json(target); }});
    return o;
  };
  opt("--corpus", f.corpus, "paths", "corpus", "input corpus (JSON lines)");
  opt("--run-dir", f.run_dir, "paths", "run_dir", "directory holding every artifact");
  opt("--seed", f.seed, "model", "seed", "random seed");
  opt("--epochs", f.epochs, "model", "epochs", "training epochs");
  opt("--token-dim", f.token_dim, "model", "token_dim", "value embedding size");
  opt("--path-dim", f.path_dim, "model", "path_dim", "path embedding size");
  opt("--code-dim", f.code_dim, "model", "code_dim", "code vector size (2*token + path)");
  opt("--keep", f.keep, "model", "dropout_keep", "context keep rate during training");
  opt("--lr", f.lr, "model", "learning_rate", "learning rate");
  opt("--optimizer", f.optimizer, "model", "optimizer", "adam or sgd")
      ->check(CLI::IsMember({"adam", "sgd"}));
  opt("--holdout", f.holdout, "model", "holdout_fraction", "fraction scored, not trained on");
  opt("--min-count", f.min_count, "vocab", "min_count", "vocabulary count cutoff");
  opt("--max-length", f.max_length, "extraction", "max_length", "path length cap");
  opt("--max-width", f.max_width, "extraction", "max_width", "path width cap");
  opt("--max-contexts", f.max_contexts, "extraction", "max_contexts", "contexts kept per bag");
  opt("--max-depth", f.max_depth, "extraction", "max_depth", "AST depth limit");
  opt("--tau-m", f.tau_m, "recommend", "method_threshold", "approach 1 method threshold");
  opt("--tau-t", f.tau_t, "recommend", "test_threshold", "approach 2 test threshold");
  opt("-k,--top-k", f.k, "recommend", "k", "candidates returned");
  opt("--lev-mode", f.lev_mode, "eval", "lev_mode", "character or token")
      ->check(CLI::IsMember({"character", "token"}));
  CLI::Option* loo = app.add_flag("--leave-one-out,!--no-leave-one-out", f.leave_one_out,
                                  "hide the query's own pair during eval");
  overrides.push_back({loo, "eval", "leave_one_out", [&f] { return json(f.leave_one_out); }});
  app.add_flag("--print-config", f.print_config, "print the resolved configuration to stderr");

  auto* ingest = app.add_subcommand("ingest", "clean a corpus into the run directory");
  auto* train = app.add_subcommand("train", "build the vocabulary and train the model");
  auto* embed = app.add_subcommand("embed", "embed every method and test into the store");
  auto* rec = app.add_subcommand("recommend", "recommend tests for one method");
  auto* evalc = app.add_subcommand("eval", "evaluate both approaches and write the reports");
  auto* radar = app.add_subcommand("export-radar", "write the method/test pair radar CSV");
  auto* hist = app.add_subcommand("export-histogram", "write the method-test cosine histogram CSV");
  for (auto* sub : {ingest, train, embed, rec, evalc, radar, hist}) sub->fallthrough();

  auto* q = rec->add_option("--query", f.query, "query method source");
  auto* qf = rec->add_option("--query-file", f.query_file, "file with the query method")
                 ->check(CLI::ExistingFile);
  q->excludes(qf);
  rec->add_option("--query-id", f.query_id, "identifier echoed in the output");
  rec->add_option("-a,--approach", f.approach, "1/functionality or 2/structure")
      ->check(CLI::IsMember({"1", "2", "functionality", "structure"}));
  rec->add_flag("--json", f.as_json, "print JSON instead of text");
  evalc->add_option("-a,--approach", f.eval_approach, "1, 2 or both")
      ->check(CLI::IsMember({"1", "2", "both"}));
  for (auto* sub : {radar, hist}) sub->add_option("-o,--out", f.out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  tr_config* cfg = nullptr;
  try {
    json merged = default_config();
    if (!f.config_file.empty()) {
      json file;
      try {
        file = json::parse(read_text(f.config_file));
      } catch (const json::parse_error& e) {
        throw Failure(TR_E_USAGE, f.config_file + ": " + e.what());
      }
      merged.merge_patch(file);
    }
    for (const auto& o : overrides)
      if (o.option->count() > 0) merged[o.section][o.key] = o.value();
    check(tr_config_new(merged.dump().c_str(), &cfg));
    if (f.print_config) {
      char* text = nullptr;
      check(tr_config_to_json(cfg, &text));
      std::cerr << take(text) << "\n";
    }

    char* out = nullptr;
    if (ingest->parsed()) {
      check(tr_cmd_ingest(cfg, &out));
      const json s = json::parse(take(out));
      std::cout << "accepted " << s["accepted"] << ", rejected " << s["rejected"] << "\n";
    } else if (train->parsed()) {
      check(tr_cmd_train(cfg, &out));
      const json s = json::parse(take(out));
      const auto& losses = s["epoch_losses"];
      for (std::size_t e = 0; e < losses.size(); ++e)
        std::cout << "epoch " << (e + 1) << " loss " << losses[e].get<double>() << "\n";
      std::cout << "trained on " << s["train_examples"] << " bags (" << s["holdout_examples"]
                << " held out); vocab " << s["values"] << " values, " << s["paths"]
                << " paths, " << s["labels"] << " labels\n";
    } else if (embed->parsed()) {
      check(tr_cmd_embed(cfg, &out));
      const json s = json::parse(take(out));
      std::cout << "embedded " << s["entries"] << " entries from " << s["pairs"] << " pairs ("
                << s["dropped"] << " dropped), dimension " << s["dimension"] << "\n";
    } else if (rec->parsed()) {
      std::string source = f.query;
      if (!f.query_file.empty()) source = read_text(f.query_file);
      if (source.empty()) throw Failure(TR_E_USAGE, "give --query or --query-file");
      const tr_approach approach =
          (f.approach == "2" || f.approach == "structure") ? TR_APPROACH_STRUCTURE
                                                           : TR_APPROACH_FUNCTIONALITY;
      check(tr_cmd_recommend(cfg, source.c_str(), f.query_id.c_str(), approach, f.as_json,
                             &out));
      std::cout << take(out);
      if (f.as_json) std::cout << "\n";
    } else if (evalc->parsed()) {
      const int mask = f.eval_approach == "1" ? 1 : f.eval_approach == "2" ? 2 : 3;
      check(tr_cmd_eval(cfg, mask, &out));
      std::cout << take(out);
    } else if (radar->parsed()) {
      check(tr_cmd_export_radar(cfg, f.out.empty() ? nullptr : f.out.c_str()));
    } else if (hist->parsed()) {
      check(tr_cmd_export_histogram(cfg, f.out.empty() ? nullptr : f.out.c_str()));
    }
    tr_config_free(cfg);
    return 0;
  } catch (const Failure& e) {
    tr_config_free(cfg);
    std::cerr << "error (" << tr_status_name(e.status) << "): " << e.what() << "\n";
    return tr_exit_code(e.status);
  } catch (const std::exception& e) {
    tr_config_free(cfg);
    std::cerr << "error (internal): " << e.what() << "\n";
    return 3;
  }
}
