#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "eval/levenshtein.hpp"
#include "model/config.hpp"
#include "pathext/bag_builder.hpp"

namespace testrec::pipeline {

struct RunPaths {
  std::string corpus;           // raw input JSONL (ingest)
  std::string run_dir = "run";  // every artifact lives here
  // Optional overrides; empty means <run_dir>/<default name>.
  std::string vocab;
  std::string model;
  std::string store;
};

struct RunConfig {
  RunPaths paths;
  model::ModelConfig model;
  pathext::PreparationConfig preparation;
  std::uint64_t min_count = 1;
  double method_threshold = 0.90;
  double test_threshold = 0.70;
  std::size_t k = 5;
  bool leave_one_out = true;
  eval::LevMode lev_mode = eval::LevMode::Character;

  // Throws UsageError.
  void validate() const;

  std::filesystem::path run_dir() const { return paths.run_dir; }
  std::filesystem::path vocab_path() const;
  std::filesystem::path model_path() const;
  std::filesystem::path store_path() const;
};

// Full document with every key present.
std::string to_json(const RunConfig& config);

// Missing keys keep their defaults; unknown keys and wrong types are
// UsageErrors. The result is validated.
RunConfig config_from_json(std::string_view json);

// FNV-1a over the canonical JSON without the "paths" section.
std::uint64_t config_hash(const RunConfig& config);

std::string hex64(std::uint64_t value);

}  // namespace testrec::pipeline
