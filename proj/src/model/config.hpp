#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace testrec::model {

enum class Optimizer { Sgd, Adam };

std::string_view to_string(Optimizer optimizer);
Optimizer parse_optimizer(std::string_view name);

// Defaults: 9 epochs, 384-element code vectors, dropout keep rate 0.75.
// The 384 splits evenly into source value, path and target value
// embeddings of 128 each.
struct ModelConfig {
  std::size_t token_dim = 128;
  std::size_t path_dim = 128;
  std::size_t code_dim = 384;
  std::size_t epochs = 9;
  double dropout_keep = 0.75;
  double learning_rate = 1e-3;
  std::uint64_t seed = 42;
  Optimizer optimizer = Optimizer::Adam;
  double holdout_fraction = 0.1;
  double init_range = 0.05;

  std::size_t context_dim() const { return 2 * token_dim + path_dim; }

  // Throws UsageError when an invariant is violated.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace testrec::model
