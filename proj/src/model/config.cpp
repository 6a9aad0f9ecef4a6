#include "model/config.hpp"

#include <cmath>
#include <string>

#include "common/errors.hpp"

namespace testrec::model {

std::string_view to_string(Optimizer optimizer) {
  return optimizer == Optimizer::Adam ? "adam" : "sgd";
}

Optimizer parse_optimizer(std::string_view name) {
  if (name == "adam") return Optimizer::Adam;
  if (name == "sgd") return Optimizer::Sgd;
  throw UsageError("unknown optimizer '" + std::string(name) + "' (expected adam or sgd)");
}

void ModelConfig::validate() const {
  if (token_dim == 0 || path_dim == 0) throw UsageError("embedding sizes must be positive");
  if (code_dim != context_dim())
    throw UsageError("code_dim (" + std::to_string(code_dim) +
                     ") must equal 2*token_dim + path_dim (" +
                     std::to_string(context_dim()) + ")");
  if (!(dropout_keep > 0.0 && dropout_keep <= 1.0))
    throw UsageError("dropout_keep must be in (0, 1]");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw UsageError("learning_rate must be positive");
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0))
    throw UsageError("holdout_fraction must be in [0, 1)");
  if (!(init_range > 0.0)) throw UsageError("init_range must be positive");
}

}  // namespace testrec::model
