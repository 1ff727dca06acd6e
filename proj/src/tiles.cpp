#include "multiweb/tiles.hpp"

#include <algorithm>
#include <string>

#include "multiweb/errors.hpp"
#include "multiweb/fibonacci.hpp"

namespace multiweb {

int Tile::multiplicity(int v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v) ? 1 : 0;
}

bool canonical_tile_less(const Tile& a, const Tile& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.vertices < b.vertices;
}

namespace {

// Depth-first over edges in canonical order; `visit` is called once per
// matching with the chosen edge indices.
template <typename Visit>
void for_each_matching(const Graph& g, Visit&& visit) {
  const auto& edges = g.edges();
  std::vector<char> used(g.vertex_count() + 1, 0);
  std::vector<int> chosen;
  auto recurse = [&](auto&& self, std::size_t next) -> void {
    visit(chosen);
    for (std::size_t e = next; e < edges.size(); ++e) {
      const Edge& edge = edges[e];
      if (used[edge.u] || used[edge.v]) continue;
      used[edge.u] = used[edge.v] = 1;
      chosen.push_back(static_cast<int>(e));
      self(self, e + 1);
      chosen.pop_back();
      used[edge.u] = used[edge.v] = 0;
    }
  };
  recurse(recurse, 0);
}

}  // namespace

std::vector<Tile> enumerate_tiles(const Graph& g, std::size_t max_tiles) {
  std::vector<Tile> tiles;
  for_each_matching(g, [&](const std::vector<int>& chosen) {
    if (tiles.size() >= max_tiles)
      throw ResourceLimit("tile count exceeds cap of " +
                          std::to_string(max_tiles));
    Tile t;
    t.edges = chosen;
    for (int e : chosen) {
      t.vertices.push_back(g.edges()[e].u);
      t.vertices.push_back(g.edges()[e].v);
    }
    std::sort(t.vertices.begin(), t.vertices.end());
    tiles.push_back(std::move(t));
  });
  std::stable_sort(tiles.begin(), tiles.end(), canonical_tile_less);
  return tiles;
}

std::vector<HomogenizedTile> homogenize(const std::vector<Tile>& tiles,
                                        int vertex_count) {
  std::vector<HomogenizedTile> out;
  out.reserve(tiles.size());
  for (const Tile& t : tiles) {
    const int zero = vertex_count - 2 * t.size();
    if (zero < 0)
      throw InvalidArgument("tile covers more vertices than the graph has");
    out.push_back({t, zero});
  }
  return out;
}

std::vector<HomogenizedTile> homogenized_tiles(const Graph& g,
                                               std::size_t max_tiles) {
  return homogenize(enumerate_tiles(g, max_tiles), g.vertex_count());
}

BigInt count_tiles(const Graph& g, std::size_t max_tiles) {
  const int n = g.vertex_count();
  if (g == make_path(n)) return fibonacci(n + 1);
  if (n >= 3 && g == make_cycle(n)) return lucas(n);
  std::size_t count = 0;
  for_each_matching(g, [&](const std::vector<int>&) {
    if (++count > max_tiles)
      throw ResourceLimit("tile count exceeds cap of " +
                          std::to_string(max_tiles));
  });
  return count;
}

}  // namespace multiweb
