#include "pathext/path_context.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "common/errors.hpp"
#include "common/hash.hpp"
#include "common/rng.hpp"

namespace testrec::pathext {

std::string AstPath::canonical() const {
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i > 0) out += directions[i - 1] == Direction::Up ? '^' : '_';
    out += '(';
    out += kinds[i];
    out += ')';
  }
  return out;
}

AstPath AstPath::reversed() const {
  AstPath r;
  r.kinds.assign(kinds.rbegin(), kinds.rend());
  r.directions.reserve(directions.size());
  for (auto it = directions.rbegin(); it != directions.rend(); ++it)
    r.directions.push_back(*it == Direction::Up ? Direction::Down : Direction::Up);
  r.width = width;
  return r;
}

std::uint64_t path_hash(std::string_view canonical) { return fnv1a64(canonical); }

std::string normalize_value(std::string_view raw, std::string_view kind) {
  if (kind == "IntegerLiteralExpr" || kind == "LongLiteralExpr" ||
      kind == "DoubleLiteralExpr" || kind == "number-literal")
    return "NUM";
  if (kind == "StringLiteralExpr" || kind == "string-literal") return "STR";
  if (kind == "CharLiteralExpr" || kind == "char-literal") return "CHR";
  std::string out(raw);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::vector<std::pair<NodeId, NodeId>> enumerate_leaf_pairs(const Ast& ast) {
  const auto leaves = ast.terminals();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(leaves.size() * (leaves.size() - (leaves.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    for (std::size_t j = i + 1; j < leaves.size(); ++j)
      pairs.emplace_back(leaves[i], leaves[j]);
  return pairs;
}

AstPath extract_path(const Ast& ast, NodeId from, NodeId to) {
  std::vector<NodeId> up{from};
  std::vector<NodeId> down{to};
  NodeId a = from;
  NodeId b = to;
  while (ast.node(a).depth > ast.node(b).depth) up.push_back(a = *ast.node(a).parent);
  while (ast.node(b).depth > ast.node(a).depth) down.push_back(b = *ast.node(b).parent);
  while (a != b) {
    up.push_back(a = *ast.node(a).parent);
    down.push_back(b = *ast.node(b).parent);
  }
  // up ends at the LCA; down ends at it too.
  down.pop_back();

  AstPath path;
  path.kinds.reserve(up.size() + down.size());
  for (NodeId id : up) path.kinds.push_back(ast.node(id).kind);
  for (auto it = down.rbegin(); it != down.rend(); ++it)
    path.kinds.push_back(ast.node(*it).kind);
  path.directions.assign(up.size() - 1, Direction::Up);
  path.directions.resize(up.size() - 1 + down.size(), Direction::Down);

  const auto branch_index = [&](const std::vector<NodeId>& chain) -> std::uint32_t {
    // The node just below the LCA on this side; a leaf that is itself the
    // LCA cannot happen for distinct leaves.
    return chain.size() >= 2 ? ast.node(chain[chain.size() - 2]).child_index : 0;
  };
  const std::uint32_t ia = branch_index(up);
  std::uint32_t ib = 0;
  if (!down.empty()) ib = ast.node(down.back()).child_index;
  path.width = ia > ib ? ia - ib : ib - ia;
  return path;
}

std::string method_label(const Ast& ast) {
  const auto leaf = ast.method_name_leaf();
  if (!leaf) return {};
  return normalize_value(*ast.node(*leaf).value, ast.node(*leaf).kind);
}

ContextBag extract_contexts(const Ast& ast, std::string label, std::string unit_id,
                            const ExtractionConfig& config) {
  const auto masked = ast.method_name_leaf();
  const auto value_of = [&](NodeId id) {
    if (masked && *masked == id) return std::string(kMethodNameSentinel);
    const auto& n = ast.node(id);
    return normalize_value(*n.value, n.kind);
  };

  std::vector<PathContext> kept;
  for (const auto& [a, b] : enumerate_leaf_pairs(ast)) {
    const AstPath path = extract_path(ast, a, b);
    if (path.length() > config.max_length || path.width > config.max_width) continue;
    PathContext pc;
    pc.source_value = value_of(a);
    pc.path = path.canonical();
    pc.path_hash = path_hash(pc.path);
    pc.target_value = value_of(b);
    kept.push_back(std::move(pc));
  }
  if (kept.empty())
    throw EmptyBag("no path-context of '" + unit_id + "' survives the length/width caps");

  if (kept.size() > config.max_contexts) {
    std::vector<std::size_t> order(kept.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(fnv1a64(unit_id));
    for (std::size_t i = 0; i < config.max_contexts; ++i)
      std::swap(order[i], order[i + rng.index(order.size() - i)]);
    order.resize(config.max_contexts);
    std::sort(order.begin(), order.end());
    std::vector<PathContext> sample;
    sample.reserve(order.size());
    for (std::size_t i : order) sample.push_back(std::move(kept[i]));
    kept = std::move(sample);
  }

  return ContextBag{std::move(unit_id), std::move(label), std::move(kept)};
}

void write_context_dump(std::ostream& out, const ContextBag& bag) {
  for (const auto& pc : bag.contexts)
    out << pc.source_value << '\t' << pc.path_hash << '\t' << pc.target_value << '\n';
}

}  // namespace testrec::pathext
