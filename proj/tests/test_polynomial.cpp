#include <doctest.h>

#include <random>

#include "multiweb/errors.hpp"
#include "multiweb/partition.hpp"
#include "multiweb/polynomial.hpp"
#include "oracles.hpp"

using namespace multiweb;

namespace {

std::vector<Rational> ones(std::size_t n) { return std::vector<Rational>(n, Rational(1)); }

}  // namespace

TEST_CASE("triangle tiling polynomial") {
  const auto tiles = homogenized_tiles(make_cycle(3));
  const auto w = ones(tiles.size());
  const auto p = tiling_polynomial<Rational>(tiles, w, 3);
  CHECK(p.size() == 4);
  CHECK(p.coefficient({3, 0, 0, 0}) == 1);
  CHECK(p.coefficient({1, 1, 1, 0}) == 1);
  CHECK(p.coefficient({1, 0, 1, 1}) == 1);
  CHECK(p.coefficient({1, 1, 0, 1}) == 1);
  CHECK(p.is_homogeneous(3));
  CHECK(p.evaluate(std::vector<Rational>(4, 1)) == 4);

  const auto r = reduced_polynomial(p, {{0}, {1, 2, 3}});
  CHECK(r.size() == 2);
  CHECK(r.coefficient({3, 0}) == 1);
  CHECK(r.coefficient({1, 2}) == 3);
  CHECK(reduced_polynomial(p, {{0}, {1}, {2}, {3}}) == p);
}

TEST_CASE("pentagon reduced polynomial and single vertex") {
  const auto tiles = homogenized_tiles(make_cycle(5));
  const auto w = ones(tiles.size());
  const auto r = reduced_polynomial(tiling_polynomial<Rational>(tiles, w, 5),
                                    {{0}, {1, 2, 3, 4, 5}});
  CHECK(r.size() == 3);
  CHECK(r.coefficient({5, 0}) == 1);
  CHECK(r.coefficient({3, 2}) == 5);
  CHECK(r.coefficient({1, 4}) == 5);

  const auto single = homogenized_tiles(make_cycle(1));
  const auto p = tiling_polynomial<Rational>(single, ones(1), 1);
  CHECK(p.size() == 1);
  CHECK(p.coefficient({1, 0}) == 1);
}

TEST_CASE("polynomial rejects bad input") {
  const auto tiles = homogenized_tiles(make_cycle(3));
  std::vector<double> w(4, 1.0);
  w[2] = 0.0;
  CHECK_THROWS_AS(tiling_polynomial<double>(tiles, w, 3), InvalidArgument);
  const auto p = tiling_polynomial<double>(tiles, std::vector<double>(4, 1.0), 3);
  CHECK_THROWS_AS(reduced_polynomial(p, {{0, 1}, {1, 2, 3}}), InvalidArgument);
  CHECK_THROWS_AS(reduced_polynomial(p, {{0}, {1, 2}}), InvalidArgument);
}

TEST_CASE("small partition functions") {
  const auto tiles = homogenized_tiles(make_cycle(3));
  const std::vector<BigInt> w(tiles.size(), 1);
  CHECK(partition_function_exact<BigInt>(tiles, w, {0, 0, 0}, 1) == 1);
  CHECK(partition_function_exact<BigInt>(tiles, w, {1, 1, 0}, 1) == 1);
  CHECK(partition_function_exact<BigInt>(tiles, w, {1, 1, 1}, 1) == 0);
  CHECK(partition_function_exact<BigInt>(tiles, w, {1, 1, 1}, 3) == 0);
  CHECK(partition_function_exact<BigInt>(tiles, w, {2, 2, 2}, 3) == 6);
  CHECK(partition_function_exact<BigInt>(tiles, w, {0, 0, 0}, 2) == 1);
  // N V - sum n < 0: nothing fits.
  CHECK(partition_function_exact<BigInt>(tiles, w, {2, 2, 2}, 1) == 0);
  CHECK_THROWS_AS(partition_function_exact<BigInt>(tiles, w, {50, 50, 50}, 100, 1000),
                  ResourceLimit);
}

TEST_CASE("partition function and moments match brute force") {
  struct Case {
    Graph g;
    std::vector<int> n;
    int colors;
  };
  const std::vector<Case> cases{
      {make_cycle(3), {1, 1, 0}, 2}, {make_cycle(3), {2, 2, 2}, 3},
      {make_cycle(3), {1, 2, 1}, 3}, {make_cycle(5), {1, 1, 1, 1, 0}, 3},
      {make_cycle(5), {2, 1, 1, 2, 2}, 3}, {make_path(4), {1, 2, 2, 1}, 3},
      {make_path(4), {1, 1, 1, 1}, 2}};
  std::mt19937 rng(7);
  for (const auto& c : cases) {
    const auto tiles = homogenized_tiles(c.g);
    std::vector<Rational> w;
    for (std::size_t t = 0; t < tiles.size(); ++t)
      w.emplace_back(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 3));
    const auto brute = oracle::brute_force_law(tiles, w, c.n, c.colors);
    CHECK(partition_function_exact<Rational>(tiles, w, c.n, c.colors) == brute.z);
    if (brute.z == 0) continue;
    const auto m = exact_moments<Rational>(tiles, w, c.n, c.colors);
    for (std::size_t a = 0; a < tiles.size(); ++a) {
      CHECK(m.mean[a] == brute.mean[a]);
      for (std::size_t b = 0; b < tiles.size(); ++b)
        CHECK(m.second_moment(a, b) == brute.second[a * tiles.size() + b]);
    }
    // Floating path agrees to rounding.
    std::vector<double> wd;
    for (const auto& x : w) wd.push_back(static_cast<double>(x));
    const auto md = exact_moments<double>(tiles, wd, c.n, c.colors);
    for (std::size_t a = 0; a < tiles.size(); ++a)
      CHECK(md.mean[a] == doctest::Approx(static_cast<double>(m.mean[a])).epsilon(1e-12));
  }
}

TEST_CASE("moment identities") {
  const auto tiles = homogenized_tiles(make_cycle(5));
  const std::vector<BigInt> w(tiles.size(), 1);
  const std::vector<int> n{6, 6, 6, 6, 6};
  const int colors = 11;
  const auto m = exact_moments<Rational, BigInt>(tiles, w, n, colors);
  Rational total = 0;
  for (const auto& x : m.mean) total += x;
  CHECK(total == colors);
  for (int v = 1; v <= 5; ++v) {
    Rational cover = 0;
    for (std::size_t t = 0; t < tiles.size(); ++t) cover += tiles[t].multiplicity(v) * m.mean[t];
    CHECK(cover == n[v - 1]);
  }
  CHECK_THROWS_AS((exact_moments<Rational, BigInt>(tiles, w, {1, 1, 1, 1, 1}, 1)),
                  InfeasibleMultiplicity);
}

TEST_CASE("gauge transformations leave the measure unchanged") {
  std::mt19937 rng(11);
  for (const Graph& g : {make_cycle(3), make_path(4), make_cycle(5)}) {
    const auto tiles = homogenized_tiles(g);
    std::vector<Rational> w, wg;
    std::vector<Rational> f(g.vertex_count() + 1);
    for (auto& x : f) x = Rational(1 + static_cast<int>(rng() % 7), 1 + static_cast<int>(rng() % 4));
    for (const auto& t : tiles) {
      w.emplace_back(1 + static_cast<int>(rng() % 4));
      Rational scaled = w.back();
      for (int v : t.tile.vertices) scaled *= f[v];
      wg.push_back(scaled);
    }
    std::vector<int> n(g.vertex_count(), 1);
    const int colors = 3;
    const auto a = oracle::brute_force_law(tiles, w, n, colors);
    const auto b = oracle::brute_force_law(tiles, wg, n, colors);
    CHECK(a.states == b.states);
  }
}
