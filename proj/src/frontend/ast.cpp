#include "frontend/ast.hpp"

#include <stdexcept>

namespace testrec::frontend {

SyntaxNode SyntaxNode::leaf(std::string kind, std::string value,
                            bool method_name) {
  SyntaxNode n;
  n.kind = std::move(kind);
  n.value = std::move(value);
  n.method_name = method_name;
  return n;
}

SyntaxNode SyntaxNode::inner(std::string kind,
                             std::vector<SyntaxNode> children) {
  SyntaxNode n;
  n.kind = std::move(kind);
  n.children = std::move(children);
  return n;
}

bool is_valid_kind(std::string_view kind) {
  if (kind.empty()) return false;
  for (char c : kind) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == ':';
    if (!ok) return false;
  }
  return true;
}

namespace {

bool has_leaf(const SyntaxNode& n) {
  if (n.value) return true;
  for (const auto& c : n.children)
    if (has_leaf(c)) return true;
  return false;
}

struct Freezer {
  std::vector<AstNode>& nodes;
  std::vector<NodeId>& terminals;
  std::optional<NodeId>& method_name;
  std::uint32_t& max_depth;

  NodeId add(const SyntaxNode& src, std::optional<NodeId> parent,
             std::uint32_t child_index, std::uint32_t depth) {
    if (!is_valid_kind(src.kind))
      throw std::invalid_argument("invalid node kind '" + src.kind + "'");
    if (src.value && !src.children.empty())
      throw std::invalid_argument("node '" + src.kind +
                                  "' has both a value and children");
    const auto id = static_cast<NodeId>(nodes.size());
    AstNode node;
    node.id = id;
    node.kind = src.kind;
    node.value = src.value;
    node.parent = parent;
    node.child_index = child_index;
    node.depth = depth;
    nodes.push_back(std::move(node));
    if (depth > max_depth) max_depth = depth;

    if (src.value) {
      terminals.push_back(id);
      if (src.method_name) method_name = id;
      return id;
    }
    std::uint32_t index = 0;
    for (const auto& child : src.children) {
      if (!has_leaf(child)) continue;
      const NodeId cid = add(child, id, index++, depth + 1);
      nodes[id].children.push_back(cid);
    }
    return id;
  }
};

}  // namespace

Ast Ast::from_syntax(const SyntaxNode& root, std::size_t body_statements) {
  if (!has_leaf(root))
    throw std::invalid_argument("syntax tree has no terminals");
  Ast ast;
  Freezer f{ast.nodes_, ast.terminals_, ast.method_name_, ast.max_depth_};
  f.add(root, std::nullopt, 0, 0);
  ast.body_statements_ = body_statements;
  return ast;
}

}  // namespace testrec::frontend
