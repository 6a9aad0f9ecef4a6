#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "frontend/ast.hpp"

namespace testrec::frontend {

struct ValidationConfig {
  std::uint32_t max_depth = 64;
};

enum class RejectReason { EmptyBody, TooFewTerminals, TooDeep };

std::string_view to_string(RejectReason reason);

struct Verdict {
  std::optional<RejectReason> reason;  // empty when accepted

  bool accepted() const { return !reason.has_value(); }
  static Verdict accept() { return {}; }
  static Verdict reject(RejectReason r) { return Verdict{r}; }
};

// Cleaning filter: drops samples the embedding pipeline cannot use.
Verdict validate_ast(const Ast& ast, const ValidationConfig& config = {});

}  // namespace testrec::frontend
