#include <doctest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "multiweb/errors.hpp"
#include "multiweb/io.hpp"

using namespace multiweb;

TEST_CASE("graph JSON round trip") {
  for (const Graph& g : {make_cycle(5), make_path(4), make_cycle(1),
                         make_graph(5, {{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}})}) {
    const std::string text = io::graph_to_json(g);
    const Graph back = io::parse_graph_json(text);
    CHECK(back == g);
    CHECK(io::graph_to_json(back) == text);
  }
  const Graph g = io::parse_graph_json(R"({"vertex_count": 3, "edges": [[2, 1], [3, 2]]})");
  CHECK(g.edge_count() == 2);
}

TEST_CASE("graph JSON errors carry positions") {
  auto message = [](const std::string& text) {
    try {
      io::parse_graph_json(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("{\n  \"vertex_count\": 3,\n  \"edges\": [[1, 2],\n    [1, 1]]\n}")
            .starts_with("line 4, column 5"));
  CHECK(message("{\"vertex_count\": 3, \"edges\": [[1, 2], [2, 9]]}").starts_with("line 1, column 39"));
  CHECK(message("{\"vertex_count\": 3,\n\"edges\": [[1 2]]}").starts_with("line 2"));
  CHECK(message("{\"vertex_count\": -1, \"edges\": []}").starts_with("line 1, column 18"));
  CHECK(message("{\"vertex_count\": 3}").find("missing") != std::string::npos);
  CHECK(message("{\"vertex_count\": 3, \"edges\": [], \"extra\": 1}").find("unknown key") !=
        std::string::npos);
  CHECK_THROWS_AS(io::parse_graph_json("{\"vertex_count\": 2, \"edges\": [[1,2],[2,1]]}"),
                  InvalidEdge);
}

TEST_CASE("CSV quoting and parsing") {
  CHECK(io::csv_field("plain") == "plain");
  CHECK(io::csv_field("a,b") == "\"a,b\"");
  CHECK(io::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const auto rows = io::parse_csv("x,\"a,b\",\"q\"\"\"\n1,2,3\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][1] == "a,b");
  CHECK(rows[0][2] == "q\"");
  CHECK(rows[1][2] == "3");
}

TEST_CASE("matrix CSV round-trips bit exactly") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  MatrixXd m(6, 4);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng) / 7.0;
  m(0, 0) = 0.1;
  m(1, 1) = std::numeric_limits<double>::denorm_min();
  m(2, 2) = -0.0;
  m(3, 3) = 1e300;
  const std::string text = io::matrix_csv(m, {}, {});
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.starts_with("row,0,1,2,3\n"));
  const MatrixXd back = io::parse_matrix_csv(text);
  for (Eigen::Index i = 0; i < m.size(); ++i)
    CHECK(std::bit_cast<std::uint64_t>(back.data()[i]) == std::bit_cast<std::uint64_t>(m.data()[i]));
  CHECK(io::format_double(0.1) == "0.1");
}

TEST_CASE("atomic write replaces the file") {
  const auto path = std::filesystem::temp_directory_path() / "multiweb_io_test" / "out.txt";
  io::atomic_write(path, "first\n");
  io::atomic_write(path, "second\n");
  CHECK(io::read_file(path) == "second\n");
  CHECK(!std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(path.parent_path());
}
