#include "frontend/validate.hpp"

namespace testrec::frontend {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::EmptyBody: return "empty-body";
    case RejectReason::TooFewTerminals: return "too-few-terminals";
    case RejectReason::TooDeep: return "too-deep";
  }
  return "unknown";
}

Verdict validate_ast(const Ast& ast, const ValidationConfig& config) {
  if (ast.body_statements() == 0) return Verdict::reject(RejectReason::EmptyBody);
  if (ast.terminals().size() < 2)
    return Verdict::reject(RejectReason::TooFewTerminals);
  if (ast.max_depth() > config.max_depth)
    return Verdict::reject(RejectReason::TooDeep);
  return Verdict::accept();
}

}  // namespace testrec::frontend
