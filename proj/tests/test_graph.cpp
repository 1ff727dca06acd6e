#include <doctest.h>

#include "multiweb/errors.hpp"
#include "multiweb/graph.hpp"

using namespace multiweb;

namespace {

std::vector<std::pair<int, int>> pairs(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

TEST_CASE("cycle constructor") {
  const Graph c3 = make_cycle(3);
  CHECK(c3.vertex_count() == 3);
  CHECK(c3.edge_count() == 3);

  const Graph c1 = make_cycle(1);
  CHECK(c1.vertex_count() == 1);
  CHECK(c1.edge_count() == 0);

  const Graph c2 = make_cycle(2);
  CHECK(c2.edge_count() == 1);

  const std::vector<std::pair<int, int>> c5{{1, 2}, {1, 5}, {2, 3}, {3, 4}, {4, 5}};
  CHECK(pairs(make_cycle(5)) == c5);
  CHECK_THROWS_AS(make_cycle(0), InvalidArgument);
}

TEST_CASE("path constructor") {
  CHECK(make_path(0).vertex_count() == 0);
  CHECK(make_path(1).edge_count() == 0);
  const std::vector<std::pair<int, int>> p4{{1, 2}, {2, 3}, {3, 4}};
  CHECK(pairs(make_path(4)) == p4);
  CHECK_THROWS_AS(make_path(-1), InvalidArgument);
}

TEST_CASE("general graphs are canonical and simple") {
  // K_{2,3} with parts {1,2} and {3,4,5}, given out of order.
  const Graph k23 = make_graph(5, {{5, 2}, {3, 1}, {1, 4}, {2, 3}, {1, 5}, {4, 2}});
  CHECK(k23.vertex_count() == 5);
  CHECK(k23.edge_count() == 6);
  CHECK(k23.edges().front() == Edge{1, 3});
  CHECK(k23.edge_index(4, 2) == k23.edge_index(2, 4));
  CHECK(k23.edge_index(1, 2) == -1);

  CHECK_THROWS_AS(make_graph(3, {{1, 1}}), InvalidEdge);
  CHECK_THROWS_AS(make_graph(3, {{1, 2}, {2, 1}}), InvalidEdge);
  CHECK_THROWS_AS(make_graph(3, {{1, 4}}), InvalidEdge);
  CHECK_THROWS_AS(make_graph(3, {{0, 2}}), InvalidEdge);
}

TEST_CASE("rebuilding from own edge list is idempotent") {
  for (int l = 1; l <= 9; ++l) {
    const Graph c = make_cycle(l);
    CHECK(make_graph(c.vertex_count(), pairs(c)) == c);
    const Graph p = make_path(l);
    CHECK(make_graph(p.vertex_count(), pairs(p)) == p);
  }
}
