#include <doctest.h>

#include "multiweb/cycle.hpp"
#include "multiweb/laplacian.hpp"
#include "multiweb/partition.hpp"

using namespace multiweb;

TEST_CASE("triangle Laplacian and inverse") {
  const auto tiles = homogenized_tiles(make_cycle(3));
  const MatrixXd d = incidence_matrix(tiles, 3);
  CHECK(d.colwise().sum().isApprox(VectorXd::Constant(4, 3.0).transpose()));
  const MatrixXd delta = build_laplacian(d, VectorXd::Ones(4));
  MatrixXd expected(4, 4);
  expected << 12, 2, 2, 2, 2, 2, 1, 1, 2, 1, 2, 1, 2, 1, 1, 2;
  CHECK(delta == expected);

  const MatrixXd inv = pseudo_inverse_on_image(delta);
  CHECK(inv(0, 0) == doctest::Approx(1.0 / 9).epsilon(1e-12));
  CHECK(inv(0, 1) == doctest::Approx(-1.0 / 18).epsilon(1e-12));
  CHECK(inv(1, 1) == doctest::Approx(7.0 / 9).epsilon(1e-12));
  CHECK(inv(1, 2) == doctest::Approx(-2.0 / 9).epsilon(1e-12));
  CHECK((delta * inv * delta - delta).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("pentagon Laplacian corner entries") {
  const auto tiles = homogenized_tiles(make_cycle(5));
  const MatrixXd delta = build_laplacian(incidence_matrix(tiles, 5), VectorXd::Ones(tiles.size()));
  CHECK(delta(0, 0) == 75);
  CHECK(delta(0, 1) == 10);
}

TEST_CASE("even cycle kernel is annihilated") {
  const auto tiles = homogenized_tiles(make_cycle(4));
  const MatrixXd d = incidence_matrix(tiles, 4);
  const MatrixXd delta = build_laplacian(d, VectorXd::Ones(tiles.size()));
  VectorXd alt(5);
  alt << 0, 1, -1, 1, -1;
  CHECK((d.transpose() * alt).cwiseAbs().maxCoeff() == 0.0);
  const MatrixXd inv = pseudo_inverse_on_image(delta);
  CHECK((inv * alt).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((delta * inv * delta - delta).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("Gaussian law structure") {
  for (int l : {5, 9, 11}) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const MatrixXd d = incidence_matrix(tiles, l);
    const double t = static_cast<double>(tiles.size());
    const double n = 380.0;
    const auto law = gaussian_law(d, VectorXd::Constant(tiles.size(), 1.0 / t), n);
    CHECK(law.mean.isApprox(VectorXd::Constant(tiles.size(), n / t)));
    const auto diag = diagnose(law, d);
    CHECK(diag.asymmetry <= 1e-9 * n);
    CHECK(diag.incidence_residual <= 1e-9 * n);
    CHECK(diag.row_sum_residual <= 1e-9 * n);
    CHECK(diag.min_eigenvalue >= -1e-9 * diag.trace);
    Eigen::FullPivLU<MatrixXd> lu(d);
    CHECK(diag.rank == static_cast<Eigen::Index>(tiles.size()) - lu.rank());

    // Diagonal from the explicit formula with C = I / |T|.
    const MatrixXd inv = pseudo_inverse_on_image(MatrixXd(d * d.transpose()));
    const MatrixXd proj = d.transpose() * inv * d;
    for (Eigen::Index k = 0; k < law.covariance.rows(); ++k)
      CHECK(law.covariance(k, k) / n == doctest::Approx((1.0 - proj(k, k)) / t).epsilon(1e-10));

    // Scaling C by a constant leaves Cov / c unchanged.
    const auto scaled = gaussian_law(d, VectorXd::Ones(tiles.size()), n);
    CHECK((scaled.covariance / t - law.covariance).cwiseAbs().maxCoeff() <= 1e-10 * n);
  }
}

TEST_CASE("exact covariance on a nondegenerate path") {
  const auto tiles = homogenized_tiles(make_path(4));
  const MatrixXd d = incidence_matrix(tiles, 4);
  const std::vector<Rational> w(tiles.size(), Rational(1, 5));
  const auto exact = exact_covariance_per_color(d, w);
  const auto law = gaussian_law(d, VectorXd::Constant(tiles.size(), 0.2), 1.0);
  CHECK((exact.to_double() - law.covariance).cwiseAbs().maxCoeff() <= 1e-14);
  // Rank one: every 2x2 minor vanishes exactly.
  for (std::size_t a = 0; a < tiles.size(); ++a)
    for (std::size_t b = 0; b < tiles.size(); ++b)
      CHECK(exact(a, a) * exact(b, b) == exact(a, b) * exact(b, a));
  CHECK(exact(0, 0) != 0);
}

TEST_CASE("triangle covariance vanishes") {
  const auto tiles = homogenized_tiles(make_cycle(3));
  const MatrixXd d = incidence_matrix(tiles, 3);
  const auto exact = exact_covariance_per_color(d, std::vector<Rational>(4, Rational(1, 4)));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) CHECK(exact(a, b) == 0);
}
