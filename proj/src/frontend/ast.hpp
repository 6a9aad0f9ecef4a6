#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace testrec::frontend {

using NodeId = std::uint32_t;

// Value-type tree used while parsing and for hand-built fixtures. It is
// frozen into an Ast arena with Ast::from_syntax.
struct SyntaxNode {
  std::string kind;
  std::optional<std::string> value;
  std::vector<SyntaxNode> children;
  bool method_name = false;

  static SyntaxNode leaf(std::string kind, std::string value,
                         bool method_name = false);
  static SyntaxNode inner(std::string kind, std::vector<SyntaxNode> children);
};

struct AstNode {
  NodeId id = 0;
  std::string kind;
  std::optional<std::string> value;  // present iff the node is a leaf
  std::vector<NodeId> children;
  std::optional<NodeId> parent;
  std::uint32_t child_index = 0;  // position among the parent's children
  std::uint32_t depth = 0;        // root is 0

  bool is_leaf() const { return value.has_value(); }
  bool operator==(const AstNode&) const = default;
};

// Arena-backed AST. Node ids are preorder positions, so the same syntax
// tree always freezes to the same ids.
class Ast {
 public:
  // Inner nodes that end up with no children (empty blocks, `return;`) are
  // elided. Throws std::invalid_argument when a node has both a value and
  // children, when a kind is not a bare identifier-like name, or when
  // nothing remains after elision.
  static Ast from_syntax(const SyntaxNode& root, std::size_t body_statements);

  NodeId root() const { return 0; }
  const AstNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const AstNode> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  // Leaf ids in left-to-right source order.
  std::span<const NodeId> terminals() const { return terminals_; }

  std::optional<NodeId> method_name_leaf() const { return method_name_; }

  // Top-level statements in the method body as written, before elision.
  std::size_t body_statements() const { return body_statements_; }

  std::uint32_t max_depth() const { return max_depth_; }

  bool operator==(const Ast&) const = default;

 private:
  std::vector<AstNode> nodes_;
  std::vector<NodeId> terminals_;
  std::optional<NodeId> method_name_;
  std::size_t body_statements_ = 0;
  std::uint32_t max_depth_ = 0;
};

// Node kinds may contain letters, digits and ':' only, which keeps the
// canonical path encoding unambiguous.
bool is_valid_kind(std::string_view kind);

}  // namespace testrec::frontend
