#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "model/network.hpp"

namespace testrec::model {

struct Model {
  ModelConfig config;
  ModelParams params;
  std::uint64_t vocab_hash = 0;  // Vocabulary::content_hash of the training vocab

  bool operator==(const Model&) const = default;
};

// Model file layout (all little-endian):
//
//   offset  size  field
//   0       8     magic "TRMODEL\0"
//   8       4     u32 format version (= 1)
//   12      8     u64 stamp (config hash of the producing run)
//   20      8     u64 vocabulary content hash
//   28      ...   config: u32 token_dim, u32 path_dim, u32 code_dim,
//                 u32 epochs, f64 dropout_keep, f64 learning_rate,
//                 u64 seed, u8 optimizer (0 sgd, 1 adam),
//                 f64 holdout_fraction, f64 init_range
//   ...     ...   5 tensors in order value_embeddings, path_embeddings,
//                 combine, attention, label_embeddings; each is
//                 u32 rows | u32 cols | rows*cols f64, row-major
//                 (attention is stored as code_dim x 1).
inline constexpr std::uint32_t kModelVersion = 1;

std::string save_model(const Model& model, std::uint64_t stamp = 0);

// Throws FormatError on bad magic/version/truncation or inconsistent
// shapes, VocabMismatch when the vocabulary hash differs from `vocab`.
Model load_model(std::string_view bytes, const vocab::Vocabulary& vocab);

// Reads without checking against a vocabulary.
Model load_model_unchecked(std::string_view bytes);

}  // namespace testrec::model
