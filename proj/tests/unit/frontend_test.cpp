#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "common/errors.hpp"
#include "frontend/corpus.hpp"
#include "frontend/lexer.hpp"
#include "frontend/parser.hpp"
#include "frontend/validate.hpp"
#include "test_support.hpp"

namespace testrec::frontend {
namespace {

using testing::sexpr;

std::vector<std::string> values_of(const Ast& ast) {
  std::vector<std::string> out;
  for (auto id : ast.terminals()) out.push_back(*ast.node(id).value);
  return out;
}

// --- lexer ---

TEST(Lexer, SmallestStatement) {
  const auto tokens = tokenize("return 0;");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[0], (Token{TokenKind::Keyword, "return", 0}));
  EXPECT_EQ(tokens[1], (Token{TokenKind::NumberLiteral, "0", 7}));
  EXPECT_EQ(tokens[2], (Token{TokenKind::Punctuation, ";", 8}));
}

TEST(Lexer, AnnotationFirst) {
  const auto tokens = tokenize("@Test public void f() {}");
  ASSERT_FALSE(tokens.empty());
  EXPECT_EQ(tokens[0].kind, TokenKind::Annotation);
  EXPECT_EQ(tokens[0].lexeme, "@Test");
}

TEST(Lexer, UnterminatedStringReportsOpeningQuote) {
  try {
    tokenize("int x = \"unterminated");
    FAIL() << "expected LexError";
  } catch (const LexError& e) {
    EXPECT_EQ(e.offset(), 8u);
  }
}

TEST(Lexer, UnterminatedCharAndComment) {
  EXPECT_THROW(tokenize("char c = 'a"), LexError);
  EXPECT_THROW(tokenize("int x; /* open"), LexError);
  EXPECT_THROW(tokenize("int # x"), LexError);
}

TEST(Lexer, CommentsDropped) {
  const auto tokens = tokenize("a // line\n/* block */ b");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].lexeme, "a");
  EXPECT_EQ(tokens[1].lexeme, "b");
}

TEST(Lexer, LongestOperatorWins) {
  const auto tokens = tokenize("a >>>= b >= c ++ d");
  std::vector<std::string> ops;
  for (const auto& t : tokens)
    if (t.kind == TokenKind::Operator) ops.push_back(t.lexeme);
  EXPECT_EQ(ops, (std::vector<std::string>{">>>=", ">=", "++"}));
}

TEST(Lexer, LiteralKinds) {
  const auto tokens = tokenize("1.609344 1000L 0x1F \"s\\\"q\" 'c' true null");
  std::vector<TokenKind> kinds;
  for (const auto& t : tokens) kinds.push_back(t.kind);
  EXPECT_EQ(kinds, (std::vector<TokenKind>{TokenKind::NumberLiteral, TokenKind::NumberLiteral,
                                           TokenKind::NumberLiteral, TokenKind::StringLiteral,
                                           TokenKind::CharLiteral, TokenKind::Keyword,
                                           TokenKind::Keyword}));
  EXPECT_EQ(to_string(TokenKind::NumberLiteral), "number-literal");
}

// Offsets increase and lexemes cover the non-whitespace text.
TEST(Lexer, PropertyLexemesReproduceText) {
  std::ifstream in(testing::fixture_dir() / "fixture50.jsonl");
  const auto corpus = read_corpus(in);
  ASSERT_EQ(corpus.pairs.size(), 50u);
  for (const auto& pair : corpus.pairs) {
    for (const auto* text : {&pair.focal_method, &pair.test_case}) {
      const auto tokens = tokenize(*text);
      std::string joined;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) ASSERT_LT(tokens[i - 1].offset, tokens[i].offset);
        joined += tokens[i].lexeme;
      }
      std::string stripped;
      bool in_string = false;
      for (std::size_t i = 0; i < text->size(); ++i) {
        const char c = (*text)[i];
        if (c == '"' && (i == 0 || (*text)[i - 1] != '\\')) in_string = !in_string;
        if (in_string || !std::isspace(static_cast<unsigned char>(c))) stripped += c;
      }
      EXPECT_EQ(joined, stripped);
    }
  }
}

// --- parser ---

TEST(Parser, IsEmptyMethod) {
  const Ast ast = parse_method("public boolean isEmpty() { return 0 == size; }");
  EXPECT_EQ(ast.node(ast.root()).kind, "MethodDeclaration");
  const auto values = values_of(ast);
  for (const char* v : {"isEmpty", "0", "size"})
    EXPECT_NE(std::find(values.begin(), values.end(), v), values.end()) << v;
  ASSERT_TRUE(ast.method_name_leaf());
  EXPECT_EQ(*ast.node(*ast.method_name_leaf()).value, "isEmpty");
}

TEST(Parser, SquareMatchesHandBuiltTree) {
  const Ast ast = parse_method("int sq(int n){return n*n;}");
  EXPECT_EQ(sexpr(ast),
            "(MethodDeclaration (PrimitiveType=int) (SimpleName=sq)"
            " (Parameter (PrimitiveType=int) (SimpleName=n))"
            " (BlockStmt (ReturnStmt (BinaryExpr:multiply (NameExpr=n) (NameExpr=n)))))");
  const auto values = values_of(ast);
  EXPECT_EQ(std::count(values.begin(), values.end(), "n"), 3);
}

TEST(Parser, EmptyBodyParsesButIsRejected) {
  const Ast ast = parse_method("void f() {}");
  EXPECT_EQ(ast.body_statements(), 0u);
  const Verdict v = validate_ast(ast);
  ASSERT_FALSE(v.accepted());
  EXPECT_EQ(*v.reason, RejectReason::EmptyBody);
  EXPECT_EQ(to_string(*v.reason), "empty-body");
}

TEST(Parser, SupportedConstructs) {
  const char* sources[] = {
      "@Override @SuppressWarnings(\"x\") public static final int f(final int a, String b) "
      "throws IOException, X.Y { int c = a; c += 2; return c; }",
      "void f() { if (a) { b(); } else if (c) d(); else { e(); } }",
      "void f() { for (int i = 0, j = 1; i < n; i++, j--) { s.append(i); } }",
      "void f() { for (String s : items) { out.println(s); } }",
      "void f() { while (x > 0) { x--; } do { x++; } while (x < 3); }",
      "void f() { try { a(); } catch (IOException | RuntimeException e) { b(); } finally { c(); } }",
      "void f() { throw new IllegalStateException(\"bad\"); }",
      "int[] f(int[] a) { int[] b = new int[a.length]; int[] c = {1, 2}; return b; }",
      "void f() { a.b().c(d.e, f[0]).g(); this.x = super.y; }",
      "double f(int a) { return (double) a / (a > 0 ? a : -a) + ~a; }",
      "boolean f(Object o) { return o instanceof String && !done; }",
      "Class f() { assert x != null : \"msg\"; return String.class; }",
      "void f() { label(); break; }",
      "@Test(expected = Foo.class, timeout = 10) public void t() { x(); }",
      "public Foo() { this.a = 1; }",
  };
  for (const char* src : sources) EXPECT_NO_THROW(parse_method(src)) << src;
}

TEST(Parser, RejectedConstructs) {
  const char* sources[] = {
      "List<String> f() { return null; }",                              // generics
      "void f() { r.run(() -> x()); }",                                 // lambda
      "void f() { map(String::trim); }",                                // method reference
      "void f() { new Runnable() { public void run() {} }; }",          // anonymous class
      "void f() { class Local {} }",                                    // local class
      "void f() { switch (x) { case 1: break; } }",                     // switch
      "void f() { synchronized (this) { x(); } }",                      // synchronized
      "void f() { try (Res r = open()) { x(); } }",                     // try-with-resources
      "int[][] f() { return null; }",                                   // array of arrays
      "void f() { int a[] = null; }",                                   // C-style declarator
      "void f() { x(); } void g() { y(); }",                            // two methods
      "void f() { x(); ",                                               // unterminated body
  };
  for (const char* src : sources) EXPECT_THROW(parse_method(src), ParseError) << src;
}

TEST(Parser, ParseErrorCarriesOffsetAndExpectation) {
  try {
    parse_method("int f( { return 1; }");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 7u);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(Parser, DeepNestingIsAParseErrorNotACrash) {
  std::string body = "return ";
  for (int i = 0; i < 5000; ++i) body += "(";
  body += "1";
  for (int i = 0; i < 5000; ++i) body += ")";
  EXPECT_THROW(parse_method("int f() { " + body + "; }"), ParseError);
}

TEST(Parser, Deterministic) {
  const char* src = "public int gcd(int a, int b) { while (b != 0) { int t = a % b; a = b; b = t; } return a; }";
  EXPECT_EQ(parse_method(src), parse_method(src));
}

// Terminal values are the identifier/literal/keyword lexemes that carry
// content; punctuation and operators never become terminals.
TEST(Parser, PropertyTerminalMultisetMatchesContentTokens) {
  std::ifstream in(testing::fixture_dir() / "fixture50.jsonl");
  const auto corpus = read_corpus(in);
  for (const auto& pair : corpus.pairs) {
    for (const auto* text : {&pair.focal_method, &pair.test_case}) {
      std::map<std::string, int> expected;
      for (const auto& t : tokenize(*text)) {
        if (t.kind == TokenKind::Punctuation || t.kind == TokenKind::Operator) continue;
        if (t.kind == TokenKind::Keyword &&
            (t.lexeme == "return" || t.lexeme == "if" || t.lexeme == "else" ||
             t.lexeme == "for" || t.lexeme == "while" || t.lexeme == "do" ||
             t.lexeme == "try" || t.lexeme == "catch" || t.lexeme == "finally" ||
             t.lexeme == "throw" || t.lexeme == "new" || t.lexeme == "throws" ||
             t.lexeme == "instanceof"))
          continue;
        std::string lex = t.lexeme;
        if (t.kind == TokenKind::Annotation) lex = lex.substr(1);
        ++expected[lex];
      }
      std::map<std::string, int> actual;
      const Ast ast = parse_method(*text);
      for (const auto& v : values_of(ast)) ++actual[v];
      EXPECT_EQ(actual, expected) << *text;
    }
  }
}

// --- validate ---

TEST(Validate, FixtureSamplesAccepted) {
  EXPECT_TRUE(validate_ast(parse_method("public boolean isEmpty() { return 0 == size; }")).accepted());
}

TEST(Validate, TooFewTerminals) {
  using S = SyntaxNode;
  const Ast ast = Ast::from_syntax(S::inner("MethodDeclaration", {S::leaf("SimpleName", "f", true)}), 1);
  EXPECT_EQ(*validate_ast(ast).reason, RejectReason::TooFewTerminals);
}

TEST(Validate, TooDeep) {
  using S = SyntaxNode;
  S node = S::inner("Wrap", {S::leaf("A", "a"), S::leaf("B", "b")});
  for (int i = 0; i < 10; ++i) node = S::inner("Wrap", {std::move(node)});
  const Ast ast = Ast::from_syntax(node, 1);
  EXPECT_TRUE(validate_ast(ast, {11}).accepted());
  EXPECT_EQ(*validate_ast(ast, {10}).reason, RejectReason::TooDeep);
}

TEST(Validate, EveryAcceptedAstHasTwoTerminals) {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const Ast ast = Ast::from_syntax(testing::random_tree(rng, 6), 1);
    if (validate_ast(ast).accepted()) EXPECT_GE(ast.terminals().size(), 2u);
  }
}

// --- ast ---

TEST(Ast, StructuralInvariants) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const Ast ast = Ast::from_syntax(testing::random_tree(rng, 12), 1);
    std::size_t roots = 0;
    std::vector<NodeId> leaves;
    for (const auto& n : ast.nodes()) {
      if (!n.parent) ++roots;
      if (n.is_leaf()) {
        EXPECT_TRUE(n.children.empty());
        leaves.push_back(n.id);
      } else {
        EXPECT_FALSE(n.children.empty());
      }
      for (std::size_t c = 0; c < n.children.size(); ++c) {
        EXPECT_EQ(ast.node(n.children[c]).parent, n.id);
        EXPECT_EQ(ast.node(n.children[c]).child_index, c);
      }
    }
    EXPECT_EQ(roots, 1u);
    // Preorder ids make the leaf id order equal the in-order leaf traversal.
    EXPECT_TRUE(std::equal(leaves.begin(), leaves.end(), ast.terminals().begin(),
                           ast.terminals().end()));
  }
}

TEST(Ast, RejectsMalformedSyntax) {
  SyntaxNode bad = SyntaxNode::leaf("A", "x");
  bad.children.push_back(SyntaxNode::leaf("B", "y"));
  EXPECT_THROW(Ast::from_syntax(bad, 1), std::invalid_argument);
  EXPECT_THROW(Ast::from_syntax(SyntaxNode::leaf("Bad Kind", "x"), 1), std::invalid_argument);
  EXPECT_THROW(Ast::from_syntax(SyntaxNode::inner("Empty", {}), 1), std::invalid_argument);
}

// --- corpus ---

TEST(Corpus, LinesAndRejections) {
  std::istringstream in(
      "{\"id\":\"a\",\"focal_method\":\"int f(){return 1;}\",\"test_case\":\"void t(){f();}\"}\n"
      "\n"
      "not json\n"
      "{\"id\":\"b\",\"focal_method\":\"x\"}\n"
      "{\"id\":\"c\",\"focal_method\":\"\",\"test_case\":\"y\"}\n"
      "{\"id\":\"a\",\"focal_method\":\"m\",\"test_case\":\"t\"}\n");
  const auto r = read_corpus(in);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].method_unit_id(), "a:method");
  EXPECT_EQ(r.pairs[0].test_unit_id(), "a:test");
  ASSERT_EQ(r.rejections.size(), 4u);
  EXPECT_EQ(r.rejections[0].reason, "malformed-json");
  EXPECT_EQ(r.rejections[0].line, 3u);
  EXPECT_EQ(r.rejections[1].reason, "missing-field");
  EXPECT_EQ(r.rejections[2].reason, "empty-text");
  EXPECT_EQ(r.rejections[3].reason, "duplicate-id");
}

TEST(Corpus, JsonlRoundTrip) {
  const CorpusPair p{"x\"1", "int f() { return \"s\"; }", "void t() {\n f();\n}"};
  const auto parsed = parse_corpus_line(to_jsonl(p));
  ASSERT_TRUE(std::holds_alternative<CorpusPair>(parsed));
  EXPECT_EQ(std::get<CorpusPair>(parsed), p);
}

}  // namespace
}  // namespace testrec::frontend
