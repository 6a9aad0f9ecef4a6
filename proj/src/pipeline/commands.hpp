#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eval/evaluation.hpp"
#include "index/embedding_store.hpp"
#include "model/model_io.hpp"
#include "model/trainer.hpp"
#include "pipeline/run_config.hpp"
#include "recommend/recommend.hpp"
#include "vocab/vocabulary.hpp"

namespace testrec::pipeline {

// Artifact names inside the run directory.
inline constexpr const char* kCorpusFile = "corpus.jsonl";
inline constexpr const char* kRejectionsFile = "rejections.tsv";
inline constexpr const char* kTrainLogFile = "train_log.tsv";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kReportJson = "report.json";
inline constexpr const char* kRadarFile = "radar.csv";
inline constexpr const char* kHistogramFile = "histogram.csv";
inline constexpr const char* kManifestFile = "manifest.json";

struct IngestSummary {
  std::size_t lines = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Reads paths.corpus; writes the accepted pairs and one TSV line per
// rejected pair (line, id, side, reason, detail).
IngestSummary cmd_ingest(const RunConfig& config);

struct TrainSummary {
  std::size_t pairs = 0;
  std::size_t bags = 0;
  std::size_t values = 0;
  std::size_t paths = 0;
  std::size_t labels = 0;
  model::TrainReport report;
};

// Trains on method and test bags of the ingested corpus; writes the
// vocabulary, the model and the per-epoch loss log.
TrainSummary cmd_train(const RunConfig& config, const model::EpochCallback& on_epoch = {});

struct EmbedSummary {
  std::size_t pairs = 0;
  std::size_t entries = 0;
  std::size_t dropped = 0;
  std::size_t dimension = 0;
};

EmbedSummary cmd_embed(const RunConfig& config);

// Loaded vocabulary, model and store with their hashes cross-checked.
struct Artifacts {
  vocab::Vocabulary vocab;
  model::Model model;
  index::EmbeddingStore store;
};

// Throws MissingArtifact naming the command that produces a missing file,
// VocabMismatch / ModelMismatch on inconsistent files.
Artifacts load_artifacts(const RunConfig& config, bool need_store = true);

recommend::RecommendOptions recommend_options(const RunConfig& config);

recommend::RecommendResult cmd_recommend(const RunConfig& config, std::string_view query_source,
                                         recommend::Approach approach);

struct EvalSummary {
  eval::EvalReport report;
  std::vector<std::filesystem::path> written;
};

// Writes report.txt, report.json, radar.csv and histogram.csv.
EvalSummary cmd_eval(const RunConfig& config, bool approach1 = true, bool approach2 = true);

// Empty `out` means the default file in the run directory.
std::filesystem::path cmd_export_radar(const RunConfig& config,
                                       const std::filesystem::path& out = {});
std::filesystem::path cmd_export_histogram(const RunConfig& config,
                                           const std::filesystem::path& out = {});

}  // namespace testrec::pipeline
