#include "frontend/lexer.hpp"

#include <algorithm>
#include <array>

#include "common/errors.hpp"

namespace testrec::frontend {

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
    "true",       "false",        "null",
};

// Longest first so that maximal munch falls out of a linear scan.
constexpr std::array<std::string_view, 40> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&",
    "||",   "==",  "!=",  "<=",  ">=",  "+=", "-=", "*=", "/=", "%=",
    "&=",   "|=",  "^=",  "<<",  ">>",  "+",  "-",  "*",  "/",  "%",
    "=",    "<",   ">",   "!",   "~",   "?",  ":",  "&",  "|",  "^",
};

constexpr std::string_view kPunctuation = "(){}[];,.";

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (skip_trivia()) {
      out.push_back(next());
    }
    return out;
  }

 private:
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size()
               ? static_cast<unsigned char>(text_[pos_ + ahead])
               : 0;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  // Returns false at end of input.
  bool skip_trivia() {
    while (!at_end()) {
      const unsigned char c = peek();
      if (is_space(c)) {
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t start = pos_;
        const auto close = text_.find("*/", pos_ + 2);
        if (close == std::string_view::npos)
          throw LexError(start, "unterminated block comment");
        pos_ = close + 2;
      } else {
        return true;
      }
    }
    return false;
  }

  Token make(TokenKind kind, std::size_t start) const {
    return Token{kind, std::string(text_.substr(start, pos_ - start)), start};
  }

  Token next() {
    const std::size_t start = pos_;
    const unsigned char c = peek();

    if (is_ident_start(c)) {
      while (is_ident_part(peek())) ++pos_;
      const auto word = text_.substr(start, pos_ - start);
      return make(is_java_keyword(word) ? TokenKind::Keyword
                                        : TokenKind::Identifier,
                  start);
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return number(start);
    if (c == '"') return quoted(start, '"', TokenKind::StringLiteral);
    if (c == '\'') return quoted(start, '\'', TokenKind::CharLiteral);
    if (c == '@') return annotation(start);
    if (kPunctuation.find(static_cast<char>(c)) != std::string_view::npos &&
        !(c == '.' && peek(1) == '.' && peek(2) == '.')) {
      ++pos_;
      return make(TokenKind::Punctuation, start);
    }
    for (auto op : kOperators) {
      if (text_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return make(TokenKind::Operator, start);
      }
    }
    throw LexError(start, "illegal character");
  }

  Token number(std::size_t start) {
    const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
    if (hex) pos_ += 2;
    while (!at_end()) {
      const unsigned char c = peek();
      if (is_ident_part(c) || c == '.') {
        const bool exponent = !hex && (c == 'e' || c == 'E');
        ++pos_;
        if (exponent && (peek() == '+' || peek() == '-')) ++pos_;
      } else {
        break;
      }
    }
    return make(TokenKind::NumberLiteral, start);
  }

  Token quoted(std::size_t start, char quote, TokenKind kind) {
    ++pos_;
    while (true) {
      if (at_end() || peek() == '\n')
        throw LexError(start, kind == TokenKind::StringLiteral
                                  ? "unterminated string literal"
                                  : "unterminated char literal");
      const unsigned char c = peek();
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      ++pos_;
      if (c == static_cast<unsigned char>(quote)) break;
    }
    return make(kind, start);
  }

  Token annotation(std::size_t start) {
    ++pos_;
    if (!is_ident_start(peek())) throw LexError(start, "dangling '@'");
    while (true) {
      while (is_ident_part(peek())) ++pos_;
      if (peek() == '.' && is_ident_start(peek(1))) {
        ++pos_;
        continue;
      }
      break;
    }
    const auto name = text_.substr(start + 1, pos_ - start - 1);
    if (name == "interface") throw LexError(start, "annotation type declaration");
    return make(TokenKind::Annotation, start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::NumberLiteral: return "number-literal";
    case TokenKind::StringLiteral: return "string-literal";
    case TokenKind::CharLiteral: return "char-literal";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::Operator: return "operator";
    case TokenKind::Annotation: return "annotation";
  }
  return "unknown";
}

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) !=
         kKeywords.end();
}

std::vector<Token> tokenize(std::string_view text) {
  return Lexer(text).run();
}

}  // namespace testrec::frontend
