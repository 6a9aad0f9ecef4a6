#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "common/errors.hpp"
#include "frontend/parser.hpp"
#include "pathext/bag_builder.hpp"
#include "path_oracle.hpp"
#include "test_support.hpp"

namespace testrec::pathext {
namespace {

using frontend::SyntaxNode;
using S = SyntaxNode;
using D = Direction;

Ast flat3() {
  return Ast::from_syntax(S::inner("R", {S::leaf("A", "a"), S::leaf("B", "b"), S::leaf("C", "c")}), 1);
}

// Two leaves at the ends of a chain: leaf a sits under `depth` wrappers.
Ast chain(int depth) {
  S node = S::leaf("A", "a");
  for (int i = 0; i < depth; ++i) node = S::inner("P", {std::move(node)});
  return Ast::from_syntax(S::inner("R", {std::move(node), S::leaf("B", "b")}), 1);
}

TEST(NormalizeValue, Buckets) {
  EXPECT_EQ(normalize_value("isEmpty", "identifier"), "isempty");
  EXPECT_EQ(normalize_value("1.609344", "number-literal"), "NUM");
  EXPECT_EQ(normalize_value("\"80\"", "string-literal"), "STR");
  EXPECT_EQ(normalize_value("'c'", "char-literal"), "CHR");
  EXPECT_EQ(normalize_value("80", "IntegerLiteralExpr"), "NUM");
  EXPECT_EQ(normalize_value("\"80\"", "StringLiteralExpr"), "STR");
  EXPECT_EQ(normalize_value("Size", "NameExpr"), "size");
}

TEST(LeafPairs, Counts) {
  const Ast a = flat3();
  const auto pairs = enumerate_leaf_pairs(a);
  const auto t = a.terminals();
  EXPECT_EQ(pairs, (std::vector<std::pair<NodeId, NodeId>>{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}}));

  const Ast two = Ast::from_syntax(S::inner("R", {S::leaf("A", "a"), S::leaf("B", "b")}), 1);
  EXPECT_EQ(enumerate_leaf_pairs(two).size(), 1u);

  std::vector<S> ten;
  for (int i = 0; i < 10; ++i) ten.push_back(S::leaf("L", "x"));
  EXPECT_EQ(enumerate_leaf_pairs(Ast::from_syntax(S::inner("R", ten), 1)).size(), 45u);
}

TEST(ExtractPath, SiblingsUnderRoot) {
  const Ast a = flat3();
  const AstPath p = extract_path(a, a.terminals()[0], a.terminals()[1]);
  EXPECT_EQ(p.kinds, (std::vector<std::string>{"A", "R", "B"}));
  EXPECT_EQ(p.directions, (std::vector<D>{D::Up, D::Down}));
  EXPECT_EQ(p.length(), 2u);
  EXPECT_EQ(p.width, 1u);
  EXPECT_EQ(p.canonical(), "(A)^(R)_(B)");
}

TEST(ExtractPath, ChainOfThree) {
  const Ast a = chain(1);
  const AstPath p = extract_path(a, a.terminals()[0], a.terminals()[1]);
  EXPECT_EQ(p.kinds, (std::vector<std::string>{"A", "P", "R", "B"}));
  EXPECT_EQ(p.directions, (std::vector<D>{D::Up, D::Up, D::Down}));
  EXPECT_EQ(p.length(), 3u);
  EXPECT_EQ(p, oracle::bfs_path(a, a.terminals()[0], a.terminals()[1]));
}

TEST(ExtractPath, ReverseSymmetry) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Ast a = Ast::from_syntax(testing::random_tree(rng, 8), 1);
    for (const auto& [x, y] : enumerate_leaf_pairs(a))
      EXPECT_EQ(extract_path(a, x, y).reversed(), extract_path(a, y, x));
  }
}

TEST(ExtractContexts, FlatTree) {
  const auto bag = extract_contexts(flat3(), "f", "u", {8, 2, 200});
  EXPECT_EQ(bag.contexts.size(), 3u);
  EXPECT_EQ(bag.contexts[0].source_value, "a");
  EXPECT_EQ(bag.contexts[0].target_value, "b");
  EXPECT_EQ(bag.contexts[0].path_hash, path_hash(bag.contexts[0].path));
}

TEST(ExtractContexts, LengthCap) {
  EXPECT_THROW(extract_contexts(flat3(), "f", "u", {1, 2, 200}), EmptyBag);
  // Chain of depth 10 below the root puts 12 edges between the two leaves.
  const Ast deep = chain(10);
  EXPECT_THROW(extract_contexts(deep, "f", "u", {8, 2, 200}), EmptyBag);
  EXPECT_EQ(extract_contexts(deep, "f", "u", {20, 2, 200}).contexts.size(), 1u);
}

TEST(ExtractContexts, WidthCap) {
  std::vector<S> leaves;
  for (int i = 0; i < 5; ++i) leaves.push_back(S::leaf("L", "x" + std::to_string(i)));
  const Ast a = Ast::from_syntax(S::inner("R", leaves), 1);
  // Widths 1..4: 4 pairs of width 1, 3 of width 2.
  EXPECT_EQ(extract_contexts(a, "f", "u", {8, 1, 200}).contexts.size(), 4u);
  EXPECT_EQ(extract_contexts(a, "f", "u", {8, 2, 200}).contexts.size(), 7u);
}

TEST(ExtractContexts, MethodNameMasked) {
  const Ast a = frontend::parse_method("public boolean isEmpty() { return 0 == size; }");
  const auto bag = extract_contexts(a, method_label(a), "u", {});
  EXPECT_EQ(bag.label, "isempty");
  bool saw_sentinel = false;
  for (const auto& c : bag.contexts) {
    EXPECT_NE(c.source_value, "isempty");
    EXPECT_NE(c.target_value, "isempty");
    saw_sentinel |= c.source_value == kMethodNameSentinel || c.target_value == kMethodNameSentinel;
  }
  EXPECT_TRUE(saw_sentinel);
}

TEST(ExtractContexts, CappedSampleIsDeterministicAndKeyedByUnit) {
  std::vector<S> leaves;
  for (int i = 0; i < 40; ++i) leaves.push_back(S::leaf("L", "x" + std::to_string(i)));
  const Ast a = Ast::from_syntax(S::inner("R", leaves), 1);
  const ExtractionConfig cfg{8, 50, 25};
  const auto b1 = extract_contexts(a, "f", "unit-1", cfg);
  EXPECT_EQ(b1.contexts.size(), 25u);
  EXPECT_EQ(b1, extract_contexts(a, "f", "unit-1", cfg));
  EXPECT_NE(b1.contexts, extract_contexts(a, "f", "unit-2", cfg).contexts);
}

// Pre-cap context count equals the brute-force BFS count on random trees.
TEST(ExtractContexts, PropertyMatchesBfsOracle) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const Ast a = Ast::from_syntax(testing::random_tree(rng, 12), 1);
    for (std::size_t len : {2u, 4u, 8u})
      for (std::size_t width : {0u, 1u, 2u}) {
        const std::size_t expected = oracle::count_surviving_pairs(a, len, width);
        if (expected == 0) {
          EXPECT_THROW(extract_contexts(a, "f", "u", {len, width, 10000}), EmptyBag);
        } else {
          EXPECT_EQ(extract_contexts(a, "f", "u", {len, width, 10000}).contexts.size(), expected);
        }
      }
    for (const auto& [x, y] : enumerate_leaf_pairs(a))
      ASSERT_EQ(extract_path(a, x, y), oracle::bfs_path(a, x, y));
  }
}

// Distinct kind/direction sequences never share a canonical string.
TEST(Canonical, PropertyInjective) {
  Rng rng(9);
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<D>>> seen;
  for (int i = 0; i < 400; ++i) {
    const Ast a = Ast::from_syntax(
        testing::random_tree(rng, 12, {"A", "AA", "A:A", "A1", "B", "1A", "A:"}), 1);
    for (const auto& [x, y] : enumerate_leaf_pairs(a)) {
      const AstPath p = extract_path(a, x, y);
      auto [it, inserted] = seen.try_emplace(p.canonical(), p.kinds, p.directions);
      if (!inserted) {
        ASSERT_EQ(it->second.first, p.kinds) << p.canonical();
        ASSERT_EQ(it->second.second, p.directions) << p.canonical();
      }
    }
  }
  EXPECT_GT(seen.size(), 100u);
}

TEST(BagBuilder, RejectReasons) {
  const PreparationConfig cfg;
  auto reason = [&](const char* src) {
    try {
      bag_from_source(src, "u", cfg);
      return std::string("accepted");
    } catch (const ParseReject& e) {
      return e.reason();
    }
  };
  EXPECT_EQ(reason("int f() { return \"x; }"), "lex-error");
  EXPECT_EQ(reason("List<String> f() { return x; }"), "parse-error");
  EXPECT_EQ(reason("void f() {}"), "empty-body");
  EXPECT_EQ(reason("void f() { ; }"), "empty-body");
  EXPECT_EQ(reason("int sq(int n){return n*n;}"), "accepted");
  PreparationConfig shallow;
  shallow.validation.max_depth = 3;
  EXPECT_THROW(bag_from_source("int sq(int n){return n*n;}", "u", shallow), ParseReject);
}

TEST(BagBuilder, DeterministicDump) {
  const char* src = "public int gcd(int a, int b) { while (b != 0) { int t = a % b; a = b; b = t; } return a; }";
  std::ostringstream d1, d2;
  write_context_dump(d1, bag_from_source(src, "u", {}));
  write_context_dump(d2, bag_from_source(src, "u", {}));
  EXPECT_EQ(d1.str(), d2.str());
  EXPECT_NE(d1.str().find("METHOD_NAME\t"), std::string::npos);
}

}  // namespace
}  // namespace testrec::pathext
