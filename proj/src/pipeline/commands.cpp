#include "pipeline/commands.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "common/errors.hpp"
#include "common/file_util.hpp"
#include "common/hash.hpp"

namespace testrec::pipeline {

namespace fs = std::filesystem;
using frontend::CorpusPair;

namespace {

std::string read_artifact(const fs::path& path, const char* producer) {
  if (!fs::exists(path))
    throw MissingArtifact("missing " + path.string() + "; run `" + producer + "` first");
  return read_file(path);
}

// Records `file` in the run manifest with its content hash and the config
// hash of the producing command.
void record(const RunConfig& config, const fs::path& file, std::string_view bytes,
            const char* command) {
  const fs::path manifest_path = config.run_dir() / kManifestFile;
  nlohmann::json manifest = nlohmann::json::object();
  if (fs::exists(manifest_path)) {
    try {
      manifest = nlohmann::json::parse(read_file(manifest_path));
    } catch (const nlohmann::json::parse_error&) {
      manifest = nlohmann::json::object();
    }
  }
  const std::string stamp = hex64(config_hash(config));
  manifest["format"] = "testrec-run/1";
  manifest["artifacts"][file.filename().string()] = {{"command", command},
                                                     {"config_hash", stamp},
                                                     {"content_fnv1a64", hex64(fnv1a64(bytes))},
                                                     {"bytes", bytes.size()}};
  manifest["configs"][stamp] = nlohmann::json::parse(to_json(config));
  manifest["configs"][stamp].erase("paths");
  write_file(manifest_path, manifest.dump(2) + "\n");
}

void write_artifact(const RunConfig& config, const fs::path& path, std::string_view bytes,
                    const char* command) {
  write_file(path, bytes);
  record(config, path, bytes, command);
}

std::vector<CorpusPair> load_ingested(const RunConfig& config) {
  const std::string text = read_artifact(config.run_dir() / kCorpusFile, "ingest");
  std::istringstream in(text);
  auto result = frontend::read_corpus(in);
  if (!result.rejections.empty())
    throw FormatError("ingested corpus has malformed line " +
                      std::to_string(result.rejections.front().line));
  return std::move(result.pairs);
}

std::string tsv_field(std::string s) {
  for (char& c : s)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

IngestSummary cmd_ingest(const RunConfig& config) {
  config.validate();
  if (config.paths.corpus.empty()) throw UsageError("no corpus given");
  std::ifstream in(config.paths.corpus, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + config.paths.corpus);
  auto read = frontend::read_corpus(in);

  IngestSummary s;
  std::string accepted;
  std::string rejections = "line\tid\tside\treason\tdetail\n";
  auto reject = [&](std::size_t line, const std::string& id, const char* side,
                    const std::string& reason, const std::string& detail) {
    rejections += std::to_string(line) + "\t" + tsv_field(id) + "\t" + side + "\t" + reason +
                  "\t" + tsv_field(detail) + "\n";
    ++s.rejected;
  };
  for (const auto& r : read.rejections) reject(r.line, r.id, "line", r.reason, r.detail);

  // read_corpus keeps pairs in line order; recover line numbers for the log.
  std::size_t index = 0;
  for (const auto& pair : read.pairs) {
    ++index;
    try {
      pathext::bag_from_source(pair.focal_method, pair.method_unit_id(), config.preparation);
    } catch (const ParseReject& e) {
      reject(index, pair.id, "method", e.reason(), e.what());
      continue;
    }
    try {
      pathext::bag_from_source(pair.test_case, pair.test_unit_id(), config.preparation);
    } catch (const ParseReject& e) {
      reject(index, pair.id, "test", e.reason(), e.what());
      continue;
    }
    accepted += frontend::to_jsonl(pair) + "\n";
    ++s.accepted;
  }
  s.lines = read.pairs.size() + read.rejections.size();
  write_artifact(config, config.run_dir() / kCorpusFile, accepted, "ingest");
  write_artifact(config, config.run_dir() / kRejectionsFile, rejections, "ingest");
  return s;
}

TrainSummary cmd_train(const RunConfig& config, const model::EpochCallback& on_epoch) {
  config.validate();
  const auto pairs = load_ingested(config);
  if (pairs.empty()) throw EmptyCorpus("ingested corpus has no pairs; nothing to train on");

  std::vector<pathext::ContextBag> bags;
  for (const auto& pair : pairs) {
    bags.push_back(
        pathext::bag_from_source(pair.focal_method, pair.method_unit_id(), config.preparation));
    bags.push_back(
        pathext::bag_from_source(pair.test_case, pair.test_unit_id(), config.preparation));
  }
  const std::uint64_t stamp = config_hash(config);
  const vocab::Vocabulary vocab = vocab::build_vocab(bags, config.min_count);

  TrainSummary s;
  s.pairs = pairs.size();
  s.bags = bags.size();
  s.values = vocab.values().size();
  s.paths = vocab.paths().size();
  s.labels = vocab.labels().size();

  model::Model m;
  m.config = config.model;
  m.vocab_hash = vocab.content_hash();
  m.params = model::train(std::span<const pathext::ContextBag>(bags), vocab, config.model,
                          &s.report, on_epoch);

  std::ostringstream log;
  log << "epoch\tmean_loss\tholdout_accuracy\n";
  for (std::size_t e = 0; e < s.report.epoch_losses.size(); ++e) {
    log << (e + 1) << "\t" << s.report.epoch_losses[e] << "\t";
    if (e < s.report.holdout_accuracy.size()) log << s.report.holdout_accuracy[e];
    log << "\n";
  }
  write_artifact(config, config.vocab_path(), vocab::save_vocab(vocab, stamp), "train");
  write_artifact(config, config.model_path(), model::save_model(m, stamp), "train");
  write_artifact(config, config.run_dir() / kTrainLogFile, log.str(), "train");
  return s;
}

namespace {

struct Loaded {
  vocab::Vocabulary vocab;
  model::Model model;
  std::uint64_t model_hash = 0;
};

Loaded load_model_and_vocab(const RunConfig& config) {
  Loaded l;
  l.vocab = vocab::load_vocab(read_artifact(config.vocab_path(), "train"));
  const std::string bytes = read_artifact(config.model_path(), "train");
  l.model = model::load_model(bytes, l.vocab);
  l.model_hash = fnv1a64(bytes);
  return l;
}

}  // namespace

EmbedSummary cmd_embed(const RunConfig& config) {
  config.validate();
  const auto pairs = load_ingested(config);
  const Loaded l = load_model_and_vocab(config);
  auto built = index::build_store(pairs, l.model, l.model_hash, l.vocab, config.preparation);
  write_artifact(config, config.store_path(),
                 index::save_store(built.store, config_hash(config)), "embed");
  return {pairs.size(), built.store.size(), built.rejections.size(), built.store.dimension()};
}

Artifacts load_artifacts(const RunConfig& config, bool need_store) {
  Loaded l = load_model_and_vocab(config);
  Artifacts a{std::move(l.vocab), std::move(l.model), index::EmbeddingStore()};
  if (need_store) {
    a.store = index::load_store(read_artifact(config.store_path(), "embed"));
    if (a.store.model_hash() != l.model_hash)
      throw ModelMismatch("store " + config.store_path().string() +
                          " was built from a different model; rerun `embed`");
    if (a.store.dimension() != a.model.config.code_dim)
      throw ModelMismatch("store dimension differs from the model code size");
  }
  return a;
}

recommend::RecommendOptions recommend_options(const RunConfig& config) {
  recommend::RecommendOptions o;
  o.method_threshold = config.method_threshold;
  o.test_threshold = config.test_threshold;
  o.k = config.k;
  return o;
}

recommend::RecommendResult cmd_recommend(const RunConfig& config, std::string_view query_source,
                                         recommend::Approach approach) {
  config.validate();
  const Artifacts a = load_artifacts(config);
  return recommend::recommend(approach, query_source, a.store, a.model, a.vocab,
                              config.preparation, recommend_options(config));
}

namespace {

eval::EvalOptions eval_options(const RunConfig& config) {
  eval::EvalOptions o;
  o.recommend = recommend_options(config);
  o.leave_one_out = config.leave_one_out;
  o.lev_mode = config.lev_mode;
  return o;
}

std::vector<eval::RadarRow> radar_rows(const index::EmbeddingStore& store, double threshold) {
  try {
    return eval::pairwise_stats(store, threshold).radar;
  } catch (const NoPairs&) {
    return {};
  }
}

}  // namespace

EvalSummary cmd_eval(const RunConfig& config, bool approach1, bool approach2) {
  config.validate();
  const Artifacts a = load_artifacts(config);
  EvalSummary s;
  s.report = eval::evaluate(a.store, eval_options(config), approach1, approach2);

  const std::string stamp = hex64(config_hash(config));
  const fs::path dir = config.run_dir();
  const std::string text = "config_hash: " + stamp + "\n" + eval::report_text(s.report);
  auto json = nlohmann::ordered_json::parse(eval::report_json(s.report));
  json["config_hash"] = stamp;

  const std::vector<eval::RadarRow> radar =
      s.report.all_samples ? s.report.all_samples->radar : std::vector<eval::RadarRow>{};
  const std::pair<fs::path, std::string> outputs[] = {
      {dir / kReportText, text},
      {dir / kReportJson, json.dump(2) + "\n"},
      {dir / kRadarFile, eval::export_radar(radar)},
      {dir / kHistogramFile, eval::export_histogram(a.store)},
  };
  for (const auto& [path, bytes] : outputs) {
    write_artifact(config, path, bytes, "eval");
    s.written.push_back(path);
  }
  return s;
}

fs::path cmd_export_radar(const RunConfig& config, const fs::path& out) {
  config.validate();
  const Artifacts a = load_artifacts(config);
  const fs::path path = out.empty() ? config.run_dir() / kRadarFile : out;
  const std::string csv = eval::export_radar(radar_rows(a.store, config.method_threshold));
  if (out.empty())
    write_artifact(config, path, csv, "export-radar");
  else
    write_file(path, csv);
  return path;
}

fs::path cmd_export_histogram(const RunConfig& config, const fs::path& out) {
  config.validate();
  const Artifacts a = load_artifacts(config);
  const fs::path path = out.empty() ? config.run_dir() / kHistogramFile : out;
  const std::string csv = eval::export_histogram(a.store);
  if (out.empty())
    write_artifact(config, path, csv, "export-histogram");
  else
    write_file(path, csv);
  return path;
}

}  // namespace testrec::pipeline
