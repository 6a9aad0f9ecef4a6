#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "common/rng.hpp"
#include "frontend/source_unit.hpp"
#include "model/config.hpp"
#include "pathext/path_context.hpp"
#include "vocab/vocabulary.hpp"

namespace testrec::model {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// Every learned tensor of the network. The same struct carries gradients.
struct ModelParams {
  Matrix value_embeddings;  // |values| x token_dim
  Matrix path_embeddings;   // |paths| x path_dim
  Matrix combine;           // code_dim x context_dim, the fully connected layer
  Vector attention;         // code_dim
  Matrix label_embeddings;  // |labels| x code_dim

  static ModelParams zeros(const ModelConfig& config, std::size_t values,
                           std::size_t paths, std::size_t labels);
  static ModelParams zeros_like(const ModelParams& other);

  // Uniform(-init_range, init_range) for every tensor.
  static ModelParams initialize(const ModelConfig& config, const vocab::Vocabulary& vocab,
                                Rng& rng);

  std::size_t parameter_count() const;
  bool all_finite() const;
  bool same_shape(const ModelParams& other) const;

  bool operator==(const ModelParams& other) const;
};

struct EncodedContext {
  std::uint32_t source = vocab::kOov;
  std::uint32_t path = vocab::kOov;
  std::uint32_t target = vocab::kOov;

  bool operator==(const EncodedContext&) const = default;
};

using EncodedBag = std::vector<EncodedContext>;

EncodedBag encode_bag(const pathext::ContextBag& bag, const vocab::Vocabulary& vocab);

struct CodeVector {
  Vector values;
  std::string unit_id;
  frontend::UnitKind kind = frontend::UnitKind::Method;
};

// [source value row ; path row ; target value row].
Vector embed_context(const ModelParams& params, const EncodedContext& context);
Vector embed_context(const ModelParams& params, const pathext::PathContext& context,
                     const vocab::Vocabulary& vocab);

// tanh(W * context).
Vector combine_context(const ModelParams& params, const Vector& context);

// softmax over a . combined_i, max-subtracted.
Vector attention_weights(const ModelParams& params, std::span<const Vector> combined);

// Attention-weighted sum of the combined context vectors. No dropout.
// Throws EmptyBag.
Vector code_vector(const ModelParams& params, std::span<const EncodedContext> bag);

CodeVector code_vector(const ModelParams& params, const pathext::ContextBag& bag,
                       const vocab::Vocabulary& vocab, frontend::UnitKind kind);

// softmax(label_embeddings * code).
Vector predict_label(const ModelParams& params, const Vector& code);

// Bag-level dropout: each context survives with probability `keep`; if none
// survives one is kept uniformly at random. Returns surviving positions.
std::vector<std::size_t> dropout_mask(std::size_t n, double keep, Rng& rng);

// Cross-entropy -log p(label). With `dropout` set, contexts are dropped as
// in dropout_mask before the forward pass.
double loss(const ModelParams& params, std::span<const EncodedContext> bag,
            std::uint32_t label, Rng* dropout = nullptr, double keep = 1.0);

// Gradient with embedding rows kept sparse; the training loop consumes this.
struct SparseGradient {
  std::map<std::uint32_t, Vector> value_rows;
  std::map<std::uint32_t, Vector> path_rows;
  Matrix combine;
  Vector attention;
  Matrix label_embeddings;
  double loss = 0.0;
};

SparseGradient backward(const ModelParams& params, std::span<const EncodedContext> bag,
                        std::uint32_t label);

// Dense gradient of loss (no dropout) with respect to every tensor.
ModelParams grad(const ModelParams& params, std::span<const EncodedContext> bag,
                 std::uint32_t label);

}  // namespace testrec::model
