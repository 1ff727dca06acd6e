#ifndef MULTIWEB_GRAPH_HPP
#define MULTIWEB_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

namespace multiweb {

/// Undirected edge between 1-based vertices, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite simple graph on vertices 1..vertex_count.
///
/// Edges are kept in canonical (lexicographic) order so that edge indices,
/// and everything indexed by them downstream, are reproducible. A Graph is
/// immutable once built; construct one through make_graph / make_cycle /
/// make_path.
class Graph {
 public:
  Graph() = default;

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of edge {a, b} in edges(), or -1 if absent.
  int edge_index(int a, int b) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  friend Graph make_graph(int, const std::vector<std::pair<int, int>>&,
                          std::vector<std::string>);

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

/// Builds a canonical graph. Throws InvalidEdge on self-loops, duplicate
/// edges or out-of-range endpoints, InvalidArgument on a negative count or
/// a label list of the wrong length.
Graph make_graph(int vertex_count,
                 const std::vector<std::pair<int, int>>& edges,
                 std::vector<std::string> labels = {});

/// Cycle v_1 .. v_L. L = 1 is a single isolated vertex and L = 2 a single
/// edge.
Graph make_cycle(int length);

/// Path on n vertices (no edges for n <= 1).
Graph make_path(int vertex_count);

}  // namespace multiweb

#endif  // MULTIWEB_GRAPH_HPP
