#include "pathext/bag_builder.hpp"

#include "common/errors.hpp"
#include "frontend/parser.hpp"

namespace testrec::pathext {

ContextBag bag_from_source(std::string_view text, std::string unit_id,
                           const PreparationConfig& config) {
  frontend::Ast ast;
  try {
    ast = frontend::parse_method(text);
  } catch (const LexError& e) {
    throw ParseReject("lex-error", e.what());
  } catch (const ParseError& e) {
    throw ParseReject("parse-error", e.what());
  }
  const auto verdict = frontend::validate_ast(ast, config.validation);
  if (!verdict.accepted())
    throw ParseReject(std::string(frontend::to_string(*verdict.reason)), "rejected by cleaning");
  try {
    return extract_contexts(ast, method_label(ast), std::move(unit_id), config.extraction);
  } catch (const EmptyBag& e) {
    throw ParseReject("empty-bag", e.what());
  }
}

}  // namespace testrec::pathext
