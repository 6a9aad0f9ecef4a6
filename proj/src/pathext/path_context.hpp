#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frontend/ast.hpp"

namespace testrec::pathext {

using frontend::Ast;
using frontend::NodeId;

enum class Direction : std::uint8_t { Up, Down };

// Leaf-to-leaf walk through the lowest common ancestor: node kinds in visit
// order, one direction per edge (a run of Up followed by a run of Down).
struct AstPath {
  std::vector<std::string> kinds;
  std::vector<Direction> directions;
  // Distance between the child positions of the two branches at the lowest
  // common ancestor.
  std::uint32_t width = 0;

  std::size_t length() const { return directions.size(); }

  // "(NameExpr)^(BinaryExpr:multiply)_(NameExpr)"; '^' is up, '_' is down.
  std::string canonical() const;

  // Same walk traversed from the other end.
  AstPath reversed() const;

  bool operator==(const AstPath&) const = default;
};

std::uint64_t path_hash(std::string_view canonical);

struct PathContext {
  std::string source_value;
  std::string path;  // canonical form
  std::uint64_t path_hash = 0;
  std::string target_value;

  bool operator==(const PathContext&) const = default;
};

struct ContextBag {
  std::string unit_id;
  std::string label;
  std::vector<PathContext> contexts;

  bool operator==(const ContextBag&) const = default;
};

struct ExtractionConfig {
  std::size_t max_length = 8;
  std::size_t max_width = 2;
  std::size_t max_contexts = 200;
};

inline constexpr std::string_view kMethodNameSentinel = "METHOD_NAME";

// Literal kinds collapse to NUM / STR / CHR, everything else is lowercased.
// `kind` is either an AST node kind (IntegerLiteralExpr, ...) or a token
// kind name (number-literal, ...).
std::string normalize_value(std::string_view raw, std::string_view kind);

// All (i, j) terminal pairs with i before j in source order.
std::vector<std::pair<NodeId, NodeId>> enumerate_leaf_pairs(const Ast& ast);

AstPath extract_path(const Ast& ast, NodeId from, NodeId to);

// Lowercased name of the method the AST declares; empty if the AST has no
// method-name leaf.
std::string method_label(const Ast& ast);

// Builds the bag of path-contexts. Pairs longer than max_length or wider
// than max_width are skipped; when more than max_contexts remain a
// deterministic uniform sample keyed by unit_id is kept (in source order).
// The method-name leaf is masked with kMethodNameSentinel. Throws EmptyBag
// when nothing survives.
ContextBag extract_contexts(const Ast& ast, std::string label,
                            std::string unit_id, const ExtractionConfig& config);

// One context per line: source<TAB>path_hash<TAB>target.
void write_context_dump(std::ostream& out, const ContextBag& bag);

}  // namespace testrec::pathext
