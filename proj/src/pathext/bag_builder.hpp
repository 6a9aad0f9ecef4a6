#pragma once

#include <string>
#include <string_view>

#include "frontend/validate.hpp"
#include "pathext/path_context.hpp"

namespace testrec::pathext {

struct PreparationConfig {
  ExtractionConfig extraction;
  frontend::ValidationConfig validation;
};

// tokenize -> parse -> validate -> extract, labelled with the lowercased
// method name. Every failure surfaces as ParseReject with reason one of
// lex-error, parse-error, empty-body, too-few-terminals, too-deep,
// empty-bag.
ContextBag bag_from_source(std::string_view text, std::string unit_id,
                           const PreparationConfig& config);

}  // namespace testrec::pathext
