#include "multiweb/graph.hpp"

#include <algorithm>
#include <string>

#include "multiweb/errors.hpp"

namespace multiweb {

int Graph::edge_index(int a, int b) const {
  const Edge key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

Graph make_graph(int vertex_count,
                 const std::vector<std::pair<int, int>>& edges,
                 std::vector<std::string> labels) {
  if (vertex_count < 0)
    throw InvalidArgument("vertex count must be nonnegative");
  if (!labels.empty() && static_cast<int>(labels.size()) != vertex_count)
    throw InvalidArgument("label count does not match vertex count");

  Graph g;
  g.vertex_count_ = vertex_count;
  g.labels_ = std::move(labels);
  g.edges_.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    const std::string where = "edge " + std::to_string(i) + " (" +
                              std::to_string(a) + "," + std::to_string(b) +
                              ")";
    if (a < 1 || b < 1 || a > vertex_count || b > vertex_count)
      throw InvalidEdge(where + ": endpoint out of range 1.." +
                        std::to_string(vertex_count));
    if (a == b) throw InvalidEdge(where + ": self-loop");
    g.edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  auto dup = std::adjacent_find(g.edges_.begin(), g.edges_.end());
  if (dup != g.edges_.end())
    throw InvalidEdge("duplicate edge (" + std::to_string(dup->u) + "," +
                      std::to_string(dup->v) + ")");
  return g;
}

Graph make_cycle(int length) {
  if (length < 1) throw InvalidArgument("cycle length must be >= 1");
  if (length <= 2) return make_path(length);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < length; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(length, 1);
  return make_graph(length, edges);
}

Graph make_path(int vertex_count) {
  if (vertex_count < 0) throw InvalidArgument("path length must be >= 0");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < vertex_count; ++i) edges.emplace_back(i, i + 1);
  return make_graph(vertex_count, edges);
}

}  // namespace multiweb
