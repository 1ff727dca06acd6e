#include <doctest.h>

#include <cmath>
#include <numbers>

#include "multiweb/errors.hpp"
#include "multiweb/fibonacci.hpp"
#include "multiweb/io.hpp"
#include "multiweb/window.hpp"
#include "oracles.hpp"

using namespace multiweb;

TEST_CASE("21 local configurations") {
  const auto& c = window::enumerate_local_configs();
  REQUIRE(c.size() == 21);
  CHECK(BigInt(c.size()) == oracle::fib(8));
  CHECK(c[0].edges.empty());
  CHECK(c[0].f == 0);
  CHECK(c[0].epsilon == 0);
  const int j = window::config_index({0, 2, 4});
  REQUIRE(j >= 0);
  CHECK(c[j].f == 3);
  CHECK(c[j].epsilon == 1);
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k - 1].f <= c[k].f);
  CHECK(window::config_index({0, 1}) == -1);
}

TEST_CASE("classes of tiles") {
  const int l = 11;
  const auto tiles = homogenized_tiles(make_cycle(l));
  REQUIRE(tiles.size() == 199);
  const auto agg = window::classify_tiles(l, tiles);
  CHECK(agg.class_sizes[0] == 13);
  const auto& configs = window::enumerate_local_configs();
  for (std::size_t j = 0; j < configs.size(); ++j) {
    CHECK(agg.class_sizes[j] == window::class_size(l, configs[j]));
    if (configs[j].epsilon == 2) CHECK(agg.class_sizes[j] == 5);
  }
  const MatrixXd b = agg.matrix();
  CHECK(b.colwise().sum().minCoeff() == 1.0);
  CHECK(b.colwise().sum().maxCoeff() == 1.0);
  CHECK_THROWS_AS(window::classify_tiles(9, homogenized_tiles(make_cycle(9))), WindowWraps);
  CHECK_THROWS_AS(window::local_law(10, 1.0), InvalidArgument);
}

TEST_CASE("class sizes partition the tiles") {
  for (int l = 11; l <= 101; l += 2) {
    BigInt total = 0;
    for (const auto& c : window::enumerate_local_configs()) total += window::class_size(l, c);
    CHECK(total == oracle::lucas(l));
  }
}

TEST_CASE("aggregated incidence matches explicit B D^T") {
  for (int l : {11, 13, 15}) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const MatrixXd bd = window::classify_tiles(l, tiles).matrix() *
                        incidence_matrix(tiles, l).transpose();
    const auto rows = window::aggregated_incidence(l);
    for (int j = 0; j < 21; ++j)
      for (int v = 0; v <= l; ++v) CHECK(bd(j, v) == static_cast<double>(rows[j][v]));
  }
}

TEST_CASE("local law agrees with B Cov(X) B^T") {
  for (int l : {11, 15}) {
    const double n = 1000.0;
    const auto fast = window::local_law(l, n);
    const auto slow = window::local_law_explicit(l, n);
    CHECK((fast.mean - slow.mean).cwiseAbs().maxCoeff() <= 1e-9 * n);
    CHECK((fast.covariance - slow.covariance).cwiseAbs().maxCoeff() <= 1e-9 * n);
    CHECK(fast.mean.sum() == doctest::Approx(n));
    CHECK(fast.covariance.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-9 * n);
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(fast.covariance);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-9 * fast.covariance.trace());
  }
}

TEST_CASE("window translation and reflection symmetry") {
  const int l = 13;
  const auto tiles = homogenized_tiles(make_cycle(l));
  const MatrixXd d = incidence_matrix(tiles, l);
  const auto x = gaussian_law(d, VectorXd::Constant(tiles.size(), 1.0 / tiles.size()), 1.0);
  const MatrixXd b1 = window::classify_tiles(l, tiles, 1).matrix();
  const MatrixXd b4 = window::classify_tiles(l, tiles, 4).matrix();
  const MatrixXd c1 = b1 * x.covariance * b1.transpose();
  const MatrixXd c4 = b4 * x.covariance * b4.transpose();
  CHECK((c1 - c4).cwiseAbs().maxCoeff() <= 1e-12);

  const auto law = window::local_law(31, 1.0);
  const auto perm = window::reflection_permutation();
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j)
      CHECK(std::abs(law.covariance(i, j) - law.covariance(perm[i], perm[j])) <= 1e-9);
}

TEST_CASE("limits") {
  const auto m = window::local_limits(0, 0, 1.0);
  CHECK(m.mean == doctest::Approx(0.0652476).epsilon(1e-6));
  const auto& configs = window::enumerate_local_configs();
  for (int l : {41, 61}) {
    const auto law = window::local_law(l, 1.0);
    for (std::size_t j = 0; j < configs.size(); ++j)
      CHECK(std::abs(law.mean(j) - window::local_limits(configs[j].epsilon, configs[j].f, 1.0).mean) <= 1e-3);
  }
  CHECK_THROWS_AS(window::local_limits(2, 1, 1.0), InvalidArgument);
}

TEST_CASE("L = 31 matrix matches the frozen golden file") {
  const MatrixXd golden = io::parse_matrix_csv(
      io::read_file(std::string(MULTIWEB_GOLDEN_DIR) + "/window_L31.csv"));
  const MatrixXd now = window::local_law(31, 1.0).covariance;
  REQUIRE(golden.rows() == 21);
  REQUIRE(golden.cols() == 21);
  CHECK((golden - now).cwiseAbs().maxCoeff() <= 1e-12);
}
