#pragma once

#include <span>
#include <string_view>

#include "frontend/ast.hpp"
#include "frontend/lexer.hpp"

namespace testrec::frontend {

// Parses exactly one method (or test method) declaration.
//
// Supported: annotations (marker, single-member, normal), modifiers,
// parameters, local variables, if/else, for, for-each, while, do,
// try/catch/finally, return, throw, break, continue, assert, expression
// statements, calls (chained), field access, array access and creation
// (one dimension), casts, unary/binary/ternary/assignment operators and
// literals.
//
// Rejected with ParseError: generics, lambdas, method references,
// anonymous and local classes, nested method declarations, switch,
// synchronized blocks, try-with-resources and arrays of arrays.
Ast parse_method(std::span<const Token> tokens);

Ast parse_method(std::string_view text);

}  // namespace testrec::frontend
