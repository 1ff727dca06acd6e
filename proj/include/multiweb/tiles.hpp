#ifndef MULTIWEB_TILES_HPP
#define MULTIWEB_TILES_HPP

#include <cstddef>
#include <vector>

#include "multiweb/graph.hpp"
#include "multiweb/types.hpp"

namespace multiweb {

inline constexpr std::size_t kDefaultMaxTiles = 10'000'000;

/// A partial matching of a graph.
struct Tile {
  std::vector<int> edges;     // ascending indices into Graph::edges()
  std::vector<int> vertices;  // ascending covered vertices, 1-based

  int size() const { return static_cast<int>(edges.size()); }
  /// t_v: 1 if v is covered, else 0.
  int multiplicity(int v) const;

  friend bool operator==(const Tile&, const Tile&) = default;
};

/// A tile padded with the zero vertex v_0 so that every tile has total
/// degree V.
struct HomogenizedTile {
  Tile tile;
  int zero_multiplicity = 0;  // V - 2 s(t)

  int size() const { return tile.size(); }
  /// Multiplicity of vertex v in 0..V (v = 0 is the zero vertex).
  int multiplicity(int v) const {
    return v == 0 ? zero_multiplicity : tile.multiplicity(v);
  }
};

/// Size first, then lexicographic on the sorted covered vertices.
bool canonical_tile_less(const Tile& a, const Tile& b);

/// All partial matchings of g (including the empty one) in canonical order.
/// Throws ResourceLimit once more than max_tiles would be produced.
std::vector<Tile> enumerate_tiles(const Graph& g,
                                  std::size_t max_tiles = kDefaultMaxTiles);

/// Adds v_0 with multiplicity V - 2 s(t) to every tile.
std::vector<HomogenizedTile> homogenize(const std::vector<Tile>& tiles,
                                        int vertex_count);

/// enumerate_tiles followed by homogenize.
std::vector<HomogenizedTile> homogenized_tiles(
    const Graph& g, std::size_t max_tiles = kDefaultMaxTiles);

/// |T(g)|. Paths and cycles are recognised and counted with the
/// Fibonacci / Lucas recurrences; other graphs are counted by search, which
/// throws ResourceLimit beyond max_tiles.
BigInt count_tiles(const Graph& g, std::size_t max_tiles = kDefaultMaxTiles);

}  // namespace multiweb

#endif  // MULTIWEB_TILES_HPP
