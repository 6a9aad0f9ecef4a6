#include "frontend/parser.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "common/errors.hpp"

namespace testrec::frontend {

namespace {

constexpr int kMaxRecursion = 256;

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 11> kModifiers = {
    "public",   "private",  "protected", "static",       "final",
    "abstract", "native",   "strictfp",  "synchronized", "transient",
    "volatile"};

struct BinaryOp {
  std::string_view lexeme;
  std::string_view name;
  int precedence;
};

constexpr std::array<BinaryOp, 19> kBinaryOps = {{
    {"||", "or", 1},
    {"&&", "and", 2},
    {"|", "binOr", 3},
    {"^", "xor", 4},
    {"&", "binAnd", 5},
    {"==", "equals", 6},
    {"!=", "notEquals", 6},
    {"<", "less", 7},
    {">", "greater", 7},
    {"<=", "lessEquals", 7},
    {">=", "greaterEquals", 7},
    {"<<", "leftShift", 8},
    {">>", "signedRightShift", 8},
    {">>>", "unsignedRightShift", 8},
    {"+", "plus", 9},
    {"-", "minus", 9},
    {"*", "multiply", 10},
    {"/", "divide", 10},
    {"%", "remainder", 10},
}};
constexpr int kRelationalPrecedence = 7;

constexpr std::array<std::pair<std::string_view, std::string_view>, 12>
    kAssignOps = {{
        {"=", "assign"},
        {"+=", "plus"},
        {"-=", "minus"},
        {"*=", "multiply"},
        {"/=", "divide"},
        {"%=", "remainder"},
        {"&=", "binAnd"},
        {"|=", "binOr"},
        {"^=", "xor"},
        {"<<=", "leftShift"},
        {">>=", "signedRightShift"},
        {">>>=", "unsignedRightShift"},
    }};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set,
              std::string_view word) {
  for (auto w : set)
    if (w == word) return true;
  return false;
}

using Node = SyntaxNode;

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

  Ast run() {
    Node root = Node::inner("MethodDeclaration", {});
    auto& kids = root.children;

    while (true) {
      if (at(TokenKind::Annotation)) {
        kids.push_back(annotation());
      } else if (at_modifier()) {
        kids.push_back(Node::leaf("Modifier", take().lexeme));
      } else {
        break;
      }
    }
    if (at_op("<")) unsupported("generic methods");

    const bool constructor =
        at(TokenKind::Identifier) && peek_is(1, TokenKind::Punctuation, "(");
    if (!constructor) {
      if (at_kw("void")) {
        kids.push_back(Node::leaf("VoidType", take().lexeme));
      } else {
        kids.push_back(type());
      }
    }
    if (!at(TokenKind::Identifier)) fail("method name");
    kids.push_back(Node::leaf("SimpleName", take().lexeme, true));

    expect_punct("(");
    if (!at_punct(")")) {
      kids.push_back(parameter());
      while (accept_punct(",")) kids.push_back(parameter());
    }
    expect_punct(")");
    if (at_punct("[")) unsupported("array dimensions after the parameter list");

    if (accept_kw("throws")) {
      kids.push_back(qualified_type());
      while (accept_punct(",")) kids.push_back(qualified_type());
    }

    expect_punct("{");
    Node body = Node::inner("BlockStmt", {});
    std::size_t statements = 0;
    while (!at_punct("}")) {
      if (at_end()) fail("'}'");
      if (auto s = statement()) {
        body.children.push_back(std::move(*s));
        ++statements;
      }
    }
    expect_punct("}");
    kids.push_back(std::move(body));

    if (!at_end()) fail("end of method");
    return Ast::from_syntax(root, statements);
  }

 private:
  // --- token helpers -----------------------------------------------------

  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? &tokens_[pos_ + ahead] : nullptr;
  }

  bool peek_is(std::size_t ahead, TokenKind kind, std::string_view lexeme) const {
    const Token* t = peek(ahead);
    return t && t->kind == kind && t->lexeme == lexeme;
  }

  bool at(TokenKind kind) const { return !at_end() && tokens_[pos_].kind == kind; }
  bool at_punct(std::string_view p) const { return peek_is(0, TokenKind::Punctuation, p); }
  bool at_op(std::string_view p) const { return peek_is(0, TokenKind::Operator, p); }
  bool at_kw(std::string_view p) const { return peek_is(0, TokenKind::Keyword, p); }

  bool at_primitive() const {
    return at(TokenKind::Keyword) && contains(kPrimitiveTypes, tokens_[pos_].lexeme);
  }

  bool at_modifier() const {
    return at(TokenKind::Keyword) && contains(kModifiers, tokens_[pos_].lexeme);
  }

  const Token& take() {
    if (at_end()) fail("more input");
    return tokens_[pos_++];
  }

  bool accept_punct(std::string_view p) {
    if (!at_punct(p)) return false;
    ++pos_;
    return true;
  }

  bool accept_op(std::string_view p) {
    if (!at_op(p)) return false;
    ++pos_;
    return true;
  }

  bool accept_kw(std::string_view p) {
    if (!at_kw(p)) return false;
    ++pos_;
    return true;
  }

  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail("'" + std::string(p) + "'");
  }

  void expect_op(std::string_view p) {
    if (!accept_op(p)) fail("'" + std::string(p) + "'");
  }

  std::size_t offset() const {
    if (!at_end()) return tokens_[pos_].offset;
    if (tokens_.empty()) return 0;
    const Token& last = tokens_.back();
    return last.offset + last.lexeme.size();
  }

  [[noreturn]] void fail(const std::string& expected) const {
    if (at_op("->")) unsupported("lambda expressions");
    if (at_op("::")) unsupported("method references");
    throw ParseError(offset(), expected);
  }

  [[noreturn]] void unsupported(const std::string& construct) const {
    throw ParseError(offset(), "supported construct (" + construct +
                                   " are not supported)");
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxRecursion)
        throw ParseError(parser.offset(), "nesting depth within limits");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  // --- declarations ------------------------------------------------------

  Node annotation() {
    const Token& tok = take();
    Node name = Node::leaf("Name", tok.lexeme.substr(1));
    if (!at_punct("(")) return Node::inner("MarkerAnnotation", {std::move(name)});
    ++pos_;
    if (accept_punct(")")) return Node::inner("MarkerAnnotation", {std::move(name)});

    if (at(TokenKind::Identifier) && peek_is(1, TokenKind::Operator, "=")) {
      Node ann = Node::inner("NormalAnnotation", {std::move(name)});
      do {
        Node key = Node::leaf("SimpleName", take().lexeme);
        expect_op("=");
        ann.children.push_back(
            Node::inner("MemberValuePair", {std::move(key), annotation_value()}));
      } while (accept_punct(","));
      expect_punct(")");
      return ann;
    }
    Node ann = Node::inner("SingleMemberAnnotation",
                           {std::move(name), annotation_value()});
    expect_punct(")");
    return ann;
  }

  Node annotation_value() {
    if (at_punct("{")) return array_initializer();
    return conditional();
  }

  Node parameter() {
    Node param = Node::inner("Parameter", {});
    while (true) {
      if (at(TokenKind::Annotation)) {
        param.children.push_back(annotation());
      } else if (at_kw("final")) {
        param.children.push_back(Node::leaf("Modifier", take().lexeme));
      } else {
        break;
      }
    }
    Node t = type();
    if (accept_op("...")) {
      if (t.kind == "ArrayType") unsupported("arrays of arrays");
      t = Node::inner("ArrayType", {std::move(t)});
    }
    param.children.push_back(std::move(t));
    if (!at(TokenKind::Identifier)) fail("parameter name");
    param.children.push_back(Node::leaf("SimpleName", take().lexeme));
    if (at_punct("[")) unsupported("C-style array declarators");
    return param;
  }

  Node qualified_type() {
    if (!at(TokenKind::Identifier)) fail("type name");
    Node t = Node::leaf("ClassOrInterfaceType", take().lexeme);
    while (at_punct(".") && peek(1) && peek(1)->kind == TokenKind::Identifier) {
      ++pos_;
      t = Node::inner("ClassOrInterfaceType",
                      {std::move(t), Node::leaf("SimpleName", take().lexeme)});
    }
    if (at_op("<")) unsupported("generics");
    return t;
  }

  Node type() {
    Node t;
    if (at_primitive()) {
      t = Node::leaf("PrimitiveType", take().lexeme);
    } else if (at(TokenKind::Identifier)) {
      t = qualified_type();
    } else {
      fail("type");
    }
    if (at_punct("[") && peek_is(1, TokenKind::Punctuation, "]")) {
      pos_ += 2;
      t = Node::inner("ArrayType", {std::move(t)});
      if (at_punct("[")) unsupported("arrays of arrays");
    }
    return t;
  }

  // True when the tokens at the cursor read `Name(.Name)*([])? Identifier`.
  bool looks_like_declaration() const {
    std::size_t i = pos_;
    auto is = [&](std::size_t k, TokenKind kind, std::string_view lex) {
      return k < tokens_.size() && tokens_[k].kind == kind && tokens_[k].lexeme == lex;
    };
    if (i >= tokens_.size()) return false;
    if (tokens_[i].kind == TokenKind::Keyword) {
      if (!contains(kPrimitiveTypes, tokens_[i].lexeme)) return false;
      ++i;
    } else if (tokens_[i].kind == TokenKind::Identifier) {
      ++i;
      while (is(i, TokenKind::Punctuation, ".") && i + 1 < tokens_.size() &&
             tokens_[i + 1].kind == TokenKind::Identifier)
        i += 2;
      if (is(i, TokenKind::Operator, "<")) {
        // `Type<...> name` or `a < b` at statement start; the latter is not
        // a valid statement, so this is a generic declaration.
        throw ParseError(tokens_[i].offset,
                         "supported construct (generics are not supported)");
      }
    } else {
      return false;
    }
    while (is(i, TokenKind::Punctuation, "[") && is(i + 1, TokenKind::Punctuation, "]"))
      i += 2;
    return i < tokens_.size() && tokens_[i].kind == TokenKind::Identifier;
  }

  // --- statements --------------------------------------------------------

  // Returns nullopt for an empty statement `;`.
  std::optional<Node> statement() {
    DepthGuard guard(*this);
    if (at_punct("{")) return block();
    if (accept_punct(";")) return std::nullopt;

    if (at(TokenKind::Annotation)) unsupported("annotated local declarations");
    if (at(TokenKind::Keyword)) {
      const std::string& kw = tokens_[pos_].lexeme;
      if (kw == "if") return if_statement();
      if (kw == "while") return while_statement();
      if (kw == "do") return do_statement();
      if (kw == "for") return for_statement();
      if (kw == "try") return try_statement();
      if (kw == "return") {
        ++pos_;
        Node s = Node::inner("ReturnStmt", {});
        if (!at_punct(";")) s.children.push_back(expression());
        expect_punct(";");
        return s;
      }
      if (kw == "throw") {
        ++pos_;
        Node s = Node::inner("ThrowStmt", {expression()});
        expect_punct(";");
        return s;
      }
      if (kw == "break" || kw == "continue") {
        ++pos_;
        Node s = Node::inner(kw == "break" ? "BreakStmt" : "ContinueStmt", {});
        if (at(TokenKind::Identifier))
          s.children.push_back(Node::leaf("SimpleName", take().lexeme));
        expect_punct(";");
        return s;
      }
      if (kw == "assert") {
        ++pos_;
        Node s = Node::inner("AssertStmt", {expression()});
        if (accept_op(":")) s.children.push_back(expression());
        expect_punct(";");
        return s;
      }
      if (kw == "final") return local_declaration_statement();
      if (kw == "switch") unsupported("switch statements");
      if (kw == "synchronized") unsupported("synchronized blocks");
      if (kw == "class" || kw == "interface" || kw == "enum" || kw == "abstract" ||
          kw == "static")
        unsupported("local type declarations");
      if (kw == "void" || kw == "public" || kw == "private" || kw == "protected")
        unsupported("nested method declarations");
    }
    if (looks_like_declaration()) return local_declaration_statement();

    Node s = Node::inner("ExpressionStmt", {expression()});
    expect_punct(";");
    return s;
  }

  Node block() {
    DepthGuard guard(*this);
    expect_punct("{");
    Node b = Node::inner("BlockStmt", {});
    while (!at_punct("}")) {
      if (at_end()) fail("'}'");
      if (auto s = statement()) b.children.push_back(std::move(*s));
    }
    ++pos_;
    return b;
  }

  Node sub_statement() {
    auto s = statement();
    return s ? std::move(*s) : Node::inner("EmptyStmt", {});
  }

  Node if_statement() {
    ++pos_;
    expect_punct("(");
    Node cond = expression();
    expect_punct(")");
    Node s = Node::inner("IfStmt", {std::move(cond), sub_statement()});
    if (accept_kw("else")) s.children.push_back(sub_statement());
    return s;
  }

  Node while_statement() {
    ++pos_;
    expect_punct("(");
    Node cond = expression();
    expect_punct(")");
    return Node::inner("WhileStmt", {std::move(cond), sub_statement()});
  }

  Node do_statement() {
    ++pos_;
    Node body = sub_statement();
    if (!accept_kw("while")) fail("'while'");
    expect_punct("(");
    Node cond = expression();
    expect_punct(")");
    expect_punct(";");
    return Node::inner("DoStmt", {std::move(body), std::move(cond)});
  }

  Node for_statement() {
    ++pos_;
    expect_punct("(");
    const bool declares = at_kw("final") || looks_like_declaration();
    if (declares) {
      Node decl = Node::inner("VariableDeclarationExpr", {});
      if (at_kw("final")) decl.children.push_back(Node::leaf("Modifier", take().lexeme));
      decl.children.push_back(type());
      if (!at(TokenKind::Identifier)) fail("variable name");
      Node name = Node::leaf("SimpleName", take().lexeme);
      if (accept_op(":")) {
        decl.children.push_back(Node::inner("VariableDeclarator", {std::move(name)}));
        Node iterable = expression();
        expect_punct(")");
        return Node::inner("ForEachStmt",
                           {std::move(decl), std::move(iterable), sub_statement()});
      }
      decl.children.push_back(declarator_rest(std::move(name)));
      while (accept_punct(",")) decl.children.push_back(declarator());
      expect_punct(";");
      return for_rest(Node::inner("ForStmt", {std::move(decl)}));
    }
    Node s = Node::inner("ForStmt", {});
    if (!at_punct(";")) {
      s.children.push_back(expression());
      while (accept_punct(",")) s.children.push_back(expression());
    }
    expect_punct(";");
    return for_rest(std::move(s));
  }

  Node for_rest(Node s) {
    if (!at_punct(";")) s.children.push_back(expression());
    expect_punct(";");
    if (!at_punct(")")) {
      s.children.push_back(expression());
      while (accept_punct(",")) s.children.push_back(expression());
    }
    expect_punct(")");
    s.children.push_back(sub_statement());
    return s;
  }

  Node try_statement() {
    ++pos_;
    if (at_punct("(")) unsupported("try-with-resources");
    Node s = Node::inner("TryStmt", {block()});
    bool handled = false;
    while (accept_kw("catch")) {
      handled = true;
      expect_punct("(");
      Node param = Node::inner("Parameter", {});
      if (at_kw("final")) param.children.push_back(Node::leaf("Modifier", take().lexeme));
      Node caught = qualified_type();
      if (at_op("|")) {
        Node u = Node::inner("UnionType", {std::move(caught)});
        while (accept_op("|")) u.children.push_back(qualified_type());
        caught = std::move(u);
      }
      param.children.push_back(std::move(caught));
      if (!at(TokenKind::Identifier)) fail("exception variable name");
      param.children.push_back(Node::leaf("SimpleName", take().lexeme));
      expect_punct(")");
      s.children.push_back(Node::inner("CatchClause", {std::move(param), block()}));
    }
    if (accept_kw("finally")) {
      handled = true;
      s.children.push_back(block());
    }
    if (!handled) fail("'catch' or 'finally'");
    return s;
  }

  Node local_declaration_statement() {
    Node decl = Node::inner("VariableDeclarationExpr", {});
    if (at_kw("final")) decl.children.push_back(Node::leaf("Modifier", take().lexeme));
    decl.children.push_back(type());
    decl.children.push_back(declarator());
    while (accept_punct(",")) decl.children.push_back(declarator());
    expect_punct(";");
    return Node::inner("ExpressionStmt", {std::move(decl)});
  }

  Node declarator() {
    if (!at(TokenKind::Identifier)) fail("variable name");
    return declarator_rest(Node::leaf("SimpleName", take().lexeme));
  }

  Node declarator_rest(Node name) {
    if (at_punct("(")) unsupported("nested method declarations");
    if (at_punct("[")) unsupported("C-style array declarators");
    Node d = Node::inner("VariableDeclarator", {std::move(name)});
    if (accept_op("=")) {
      d.children.push_back(at_punct("{") ? array_initializer() : expression());
    }
    return d;
  }

  // --- expressions -------------------------------------------------------

  Node expression() {
    DepthGuard guard(*this);
    Node lhs = conditional();
    if (at(TokenKind::Operator)) {
      for (const auto& [lexeme, name] : kAssignOps) {
        if (tokens_[pos_].lexeme == lexeme) {
          ++pos_;
          Node rhs = expression();
          return Node::inner("AssignExpr:" + std::string(name),
                             {std::move(lhs), std::move(rhs)});
        }
      }
    }
    return lhs;
  }

  Node conditional() {
    Node c = binary(1);
    if (accept_op("?")) {
      Node a = expression();
      expect_op(":");
      Node b = conditional();
      return Node::inner("ConditionalExpr", {std::move(c), std::move(a), std::move(b)});
    }
    return c;
  }

  const BinaryOp* binary_op_here() const {
    if (!at(TokenKind::Operator)) return nullptr;
    for (const auto& op : kBinaryOps)
      if (tokens_[pos_].lexeme == op.lexeme) return &op;
    return nullptr;
  }

  Node binary(int min_precedence) {
    DepthGuard guard(*this);
    Node left = unary();
    while (true) {
      if (at_kw("instanceof") && kRelationalPrecedence >= min_precedence) {
        ++pos_;
        left = Node::inner("InstanceOfExpr", {std::move(left), type()});
        continue;
      }
      const BinaryOp* op = binary_op_here();
      if (!op || op->precedence < min_precedence) break;
      ++pos_;
      Node right = binary(op->precedence + 1);
      left = Node::inner("BinaryExpr:" + std::string(op->name),
                         {std::move(left), std::move(right)});
    }
    return left;
  }

  Node unary() {
    DepthGuard guard(*this);
    if (at(TokenKind::Operator)) {
      const std::string& op = tokens_[pos_].lexeme;
      std::string_view name;
      if (op == "+") name = "plus";
      else if (op == "-") name = "minus";
      else if (op == "!") name = "logicalComplement";
      else if (op == "~") name = "bitwiseComplement";
      else if (op == "++") name = "preIncrement";
      else if (op == "--") name = "preDecrement";
      if (!name.empty()) {
        ++pos_;
        return Node::inner("UnaryExpr:" + std::string(name), {unary()});
      }
    }
    if (at_punct("(") && is_cast()) {
      ++pos_;
      Node t = type();
      expect_punct(")");
      return Node::inner("CastExpr", {std::move(t), unary()});
    }
    Node e = postfix(primary());
    while (true) {
      if (accept_op("++")) {
        e = Node::inner("UnaryExpr:postIncrement", {std::move(e)});
      } else if (accept_op("--")) {
        e = Node::inner("UnaryExpr:postDecrement", {std::move(e)});
      } else {
        break;
      }
    }
    return e;
  }

  // Cursor is on '('. Casts are `(primitive[]?)` or `(Name(.Name)*[]?)`
  // followed by something that can start an operand.
  bool is_cast() const {
    std::size_t i = pos_ + 1;
    auto tok = [&](std::size_t k) -> const Token* {
      return k < tokens_.size() ? &tokens_[k] : nullptr;
    };
    const Token* t = tok(i);
    if (!t) return false;
    bool primitive = false;
    if (t->kind == TokenKind::Keyword && contains(kPrimitiveTypes, t->lexeme)) {
      primitive = true;
      ++i;
    } else if (t->kind == TokenKind::Identifier) {
      ++i;
      while (tok(i) && tok(i)->kind == TokenKind::Punctuation && tok(i)->lexeme == "." &&
             tok(i + 1) && tok(i + 1)->kind == TokenKind::Identifier)
        i += 2;
    } else {
      return false;
    }
    if (tok(i) && tok(i)->lexeme == "[" && tok(i + 1) && tok(i + 1)->lexeme == "]")
      i += 2;
    if (!tok(i) || tok(i)->kind != TokenKind::Punctuation || tok(i)->lexeme != ")")
      return false;
    if (primitive) return true;
    const Token* next = tok(i + 1);
    if (!next) return false;
    switch (next->kind) {
      case TokenKind::Identifier:
      case TokenKind::NumberLiteral:
      case TokenKind::StringLiteral:
      case TokenKind::CharLiteral:
        return true;
      case TokenKind::Keyword:
        return next->lexeme == "this" || next->lexeme == "new" ||
               next->lexeme == "super" || next->lexeme == "true" ||
               next->lexeme == "false" || next->lexeme == "null";
      case TokenKind::Punctuation:
        return next->lexeme == "(";
      case TokenKind::Operator:
        return next->lexeme == "!" || next->lexeme == "~";
      default:
        return false;
    }
  }

  static Node number_literal(const std::string& lexeme) {
    const char last = lexeme.back();
    const bool hex = lexeme.size() > 1 && lexeme[0] == '0' &&
                     (lexeme[1] == 'x' || lexeme[1] == 'X');
    if (last == 'L' || last == 'l') return Node::leaf("LongLiteralExpr", lexeme);
    if (!hex && (lexeme.find_first_of(".eE") != std::string::npos || last == 'f' ||
                 last == 'F' || last == 'd' || last == 'D'))
      return Node::leaf("DoubleLiteralExpr", lexeme);
    return Node::leaf("IntegerLiteralExpr", lexeme);
  }

  Node primary() {
    if (at_end()) fail("expression");
    const Token& t = tokens_[pos_];
    switch (t.kind) {
      case TokenKind::NumberLiteral:
        ++pos_;
        return number_literal(t.lexeme);
      case TokenKind::StringLiteral:
        ++pos_;
        return Node::leaf("StringLiteralExpr", t.lexeme);
      case TokenKind::CharLiteral:
        ++pos_;
        return Node::leaf("CharLiteralExpr", t.lexeme);
      case TokenKind::Identifier:
        if (peek_is(1, TokenKind::Operator, "->")) {
          ++pos_;
          unsupported("lambda expressions");
        }
        ++pos_;
        if (at_punct("(")) {
          Node call = Node::inner("MethodCallExpr", {Node::leaf("SimpleName", t.lexeme)});
          arguments(call);
          return call;
        }
        return Node::leaf("NameExpr", t.lexeme);
      case TokenKind::Keyword:
        if (t.lexeme == "true" || t.lexeme == "false") {
          ++pos_;
          return Node::leaf("BooleanLiteralExpr", t.lexeme);
        }
        if (t.lexeme == "null") {
          ++pos_;
          return Node::leaf("NullLiteralExpr", t.lexeme);
        }
        if (t.lexeme == "this") {
          ++pos_;
          if (at_punct("(")) unsupported("explicit constructor invocations");
          return Node::leaf("ThisExpr", t.lexeme);
        }
        if (t.lexeme == "super") {
          ++pos_;
          if (!at_punct(".")) unsupported("explicit constructor invocations");
          return Node::leaf("SuperExpr", t.lexeme);
        }
        if (t.lexeme == "new") return creation();
        break;
      case TokenKind::Punctuation:
        if (t.lexeme == "(") {
          if (closes_into_lambda()) unsupported("lambda expressions");
          ++pos_;
          Node inner = expression();
          expect_punct(")");
          return Node::inner("EnclosedExpr", {std::move(inner)});
        }
        break;
      default:
        break;
    }
    fail("expression");
  }

  // Cursor is on '('; true when the matching ')' is followed by '->'.
  bool closes_into_lambda() const {
    int balance = 0;
    for (std::size_t i = pos_; i < tokens_.size(); ++i) {
      const Token& t = tokens_[i];
      if (t.kind != TokenKind::Punctuation) continue;
      if (t.lexeme == "(") ++balance;
      if (t.lexeme == ")" && --balance == 0) {
        return i + 1 < tokens_.size() && tokens_[i + 1].kind == TokenKind::Operator &&
               tokens_[i + 1].lexeme == "->";
      }
    }
    return false;
  }

  void arguments(Node& call) {
    expect_punct("(");
    if (!at_punct(")")) {
      call.children.push_back(expression());
      while (accept_punct(",")) call.children.push_back(expression());
    }
    expect_punct(")");
  }

  // Reinterprets a NameExpr/FieldAccessExpr chain as a type for `X.class`.
  Node as_type(Node scope) const {
    if (scope.kind == "NameExpr") return Node::leaf("ClassOrInterfaceType", *scope.value);
    if (scope.kind == "FieldAccessExpr" && scope.children.size() == 2) {
      Node name = std::move(scope.children[1]);
      return Node::inner("ClassOrInterfaceType",
                         {as_type(std::move(scope.children[0])), std::move(name)});
    }
    fail("type name before '.class'");
  }

  Node postfix(Node e) {
    while (true) {
      if (accept_punct(".")) {
        if (at_op("<")) unsupported("generic method calls");
        if (accept_kw("class")) {
          e = Node::inner("ClassExpr", {as_type(std::move(e))});
          continue;
        }
        if (!at(TokenKind::Identifier)) fail("member name");
        Node name = Node::leaf("SimpleName", take().lexeme);
        if (at_punct("(")) {
          Node call = Node::inner("MethodCallExpr", {std::move(e), std::move(name)});
          arguments(call);
          e = std::move(call);
        } else {
          e = Node::inner("FieldAccessExpr", {std::move(e), std::move(name)});
        }
      } else if (accept_punct("[")) {
        Node index = expression();
        expect_punct("]");
        e = Node::inner("ArrayAccessExpr", {std::move(e), std::move(index)});
      } else if (at_op("::")) {
        unsupported("method references");
      } else {
        return e;
      }
    }
  }

  Node creation() {
    ++pos_;  // new
    Node t;
    if (at_primitive()) {
      t = Node::leaf("PrimitiveType", take().lexeme);
    } else {
      t = qualified_type();
    }
    if (at_punct("(")) {
      Node create = Node::inner("ObjectCreationExpr", {std::move(t)});
      arguments(create);
      if (at_punct("{")) unsupported("anonymous classes");
      return create;
    }
    if (!accept_punct("[")) fail("'(' or '['");
    Node create = Node::inner("ArrayCreationExpr", {std::move(t)});
    if (accept_punct("]")) {
      if (at_punct("[")) unsupported("arrays of arrays");
      if (!at_punct("{")) fail("array initializer");
      create.children.push_back(array_initializer());
      return create;
    }
    create.children.push_back(expression());
    expect_punct("]");
    if (at_punct("[")) unsupported("arrays of arrays");
    return create;
  }

  Node array_initializer() {
    expect_punct("{");
    Node init = Node::inner("ArrayInitializerExpr", {});
    while (!at_punct("}")) {
      if (at_punct("{")) unsupported("arrays of arrays");
      init.children.push_back(expression());
      if (!accept_punct(",")) break;
    }
    expect_punct("}");
    return init;
  }

  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

Ast parse_method(std::span<const Token> tokens) { return Parser(tokens).run(); }

Ast parse_method(std::string_view text) {
  const auto tokens = tokenize(text);
  return parse_method(tokens);
}

}  // namespace testrec::frontend
