#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace testrec::frontend {

enum class TokenKind {
  Keyword,
  Identifier,
  NumberLiteral,
  StringLiteral,
  CharLiteral,
  Punctuation,
  Operator,
  Annotation,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t offset;  // byte offset into the source text

  bool operator==(const Token&) const = default;
};

bool is_java_keyword(std::string_view word);

// Splits Java-subset source into tokens. Whitespace and comments are
// dropped. Throws LexError on unterminated literals/comments or characters
// outside the language.
std::vector<Token> tokenize(std::string_view text);

}  // namespace testrec::frontend
