#pragma once

// Brute-force path oracle: breadth-first search over the undirected tree.

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <vector>

#include "pathext/path_context.hpp"

namespace testrec::oracle {

inline pathext::AstPath bfs_path(const frontend::Ast& ast, frontend::NodeId from,
                                 frontend::NodeId to) {
  const std::size_t n = ast.size();
  std::vector<std::vector<frontend::NodeId>> adj(n);
  for (const auto& node : ast.nodes())
    for (auto c : node.children) {
      adj[node.id].push_back(c);
      adj[c].push_back(node.id);
    }
  std::vector<long> prev(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<frontend::NodeId> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        prev[v] = u;
        queue.push_back(v);
      }
  }
  std::vector<frontend::NodeId> walk;
  for (long v = to; v != -1; v = prev[static_cast<std::size_t>(v)])
    walk.push_back(static_cast<frontend::NodeId>(v));
  std::reverse(walk.begin(), walk.end());

  pathext::AstPath p;
  std::size_t top = 0;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    p.kinds.push_back(ast.node(walk[i]).kind);
    if (ast.node(walk[i]).depth < ast.node(walk[top]).depth) top = i;
    if (i + 1 < walk.size()) {
      const auto& parent = ast.node(walk[i]).parent;
      p.directions.push_back(parent && *parent == walk[i + 1] ? pathext::Direction::Up
                                                              : pathext::Direction::Down);
    }
  }
  if (top > 0 && top + 1 < walk.size()) {
    const long a = ast.node(walk[top - 1]).child_index;
    const long b = ast.node(walk[top + 1]).child_index;
    p.width = static_cast<std::uint32_t>(std::labs(a - b));
  }
  return p;
}

inline std::size_t count_surviving_pairs(const frontend::Ast& ast, std::size_t max_length,
                                         std::size_t max_width) {
  std::size_t count = 0;
  const auto t = ast.terminals();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const auto p = bfs_path(ast, t[i], t[j]);
      if (p.length() <= max_length && p.width <= max_width) ++count;
    }
  return count;
}

}  // namespace testrec::oracle
