#include <doctest.h>

#include <cmath>
#include <random>

#include "multiweb/cycle.hpp"
#include "multiweb/errors.hpp"
#include "multiweb/laplacian.hpp"
#include "multiweb/polynomial.hpp"
#include "oracles.hpp"

using namespace multiweb;

TEST_CASE("reduced polynomials") {
  CHECK(cycle::reduced_poly_closed(3, 1, 1) == doctest::Approx(4));
  CHECK(cycle::reduced_poly_closed(5, 1, 0) == doctest::Approx(1));
  CHECK(cycle::reduced_poly_closed(5, 1, 1) == doctest::Approx(11));
  CHECK(cycle::line_poly_closed(0, 0.7, 0.3) == doctest::Approx(1));
  CHECK(cycle::line_poly_closed(1, 0.7, 0.3) == doctest::Approx(0.7));
  CHECK(cycle::line_poly_closed(4, 1, 1) == doctest::Approx(5));
  CHECK(cycle::line_poly_recurrence<BigInt>(4, 1, 1) == 5);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.1, 1.5);
  for (int l = 2; l <= 30; ++l) {
    const double x0 = u(rng), x1 = u(rng);
    CHECK(cycle::line_poly_closed(l, x0, x1) ==
          doctest::Approx(cycle::line_poly_recurrence(l, x0, x1)).epsilon(1e-12));
    CHECK(cycle::reduced_poly_closed(l, x0, x1) ==
          doctest::Approx(cycle::cycle_poly_recurrence(l, x0, x1)).epsilon(1e-12));
  }

  for (int l : {3, 5, 7, 9}) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const std::vector<double> w(tiles.size(), 1.0);
    std::vector<int> rest;
    for (int v = 1; v <= l; ++v) rest.push_back(v);
    const auto r = reduced_polynomial(tiling_polynomial<double>(tiles, w, l), {{0}, rest});
    const double x[2] = {0.8, 0.6};
    CHECK(r.evaluate(x) == doctest::Approx(cycle::reduced_poly_closed(l, 0.8, 0.6)).epsilon(1e-12));
    const auto counts = cycle::size_counts(l);
    for (std::size_t s = 0; s < counts.size(); ++s)
      CHECK(r.coefficient({l - 2 * static_cast<int>(s), 2 * static_cast<int>(s)}) ==
            static_cast<double>(counts[s]));
  }
}

TEST_CASE("critical density") {
  CHECK(cycle::alpha_hat(3) == Rational(1, 2));
  CHECK(cycle::alpha_hat(5) == Rational(6, 11));
  CHECK(cycle::alpha_hat(9) == Rational(21, 38));
  for (int l = 3; l <= 13; l += 2) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    CHECK(cycle::alpha_hat(l) == cycle::alpha_hat_from_tiles(tiles, l));
    CHECK(cycle::alpha_hat(l) == cycle::alpha_hat_from_line_counts(l));
  }
  CHECK_THROWS_AS(cycle::alpha_hat(4), InvalidArgument);
  CHECK_THROWS_AS(cycle::alpha_hat(1), InvalidArgument);
}

TEST_CASE("circulant entries and eigenvalues") {
  CHECK(cycle::circulant_entries(3) == std::vector<BigInt>{2, 1, 1});
  CHECK(cycle::circulant_entries(5) == std::vector<BigInt>{6, 4, 3, 3, 4});
  for (int l = 3; l <= 17; l += 2) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const MatrixXd d = incidence_matrix(tiles, l);
    const MatrixXd delta = d * d.transpose();
    const auto c = cycle::circulant_entries(l);
    for (int i = 1; i <= l; ++i)
      for (int j = 1; j <= l; ++j)
        CHECK(delta(i, j) == static_cast<double>(c[((i - j) % l + l) % l]));
    CHECK(Rational(static_cast<long long>(delta(0, 0))) == cycle::laplacian_corner(l));
    CHECK(Rational(static_cast<long long>(delta(0, 1))) == cycle::laplacian_border(l));
  }
  for (int l = 3; l <= 21; l += 2) {
    const auto c = cycle::circulant_entries(l);
    for (int k = 1; k < l; ++k) CHECK(c[k] == c[l - k]);
    const auto lambda = cycle::circulant_eigenvalues(l);
    BigInt sum = 0;
    for (const auto& x : c) sum += x;
    CHECK(cycle::lambda_zero(l) == sum);
    const cycle::CycleParams p(l);
    CHECK(Rational(cycle::lambda_zero(l)) ==
          Rational(BigInt(l) * (p.tile_count() - p.fib(l))) - cycle::laplacian_border(l));
    for (int k = 1; k < l; ++k) {
      CHECK(std::abs(lambda[k] - std::conj(lambda[l - k])) <= 1e-9 * std::abs(lambda[k]));
      CHECK(std::abs(cycle::eigenvalue_closed_form(l, k) - lambda[k]) <=
            1e-9 * std::abs(lambda[k]));
    }
  }
  const auto l3 = cycle::circulant_eigenvalues(3);
  CHECK(l3[0].real() == doctest::Approx(4));
  CHECK(l3[1].real() == doctest::Approx(1));
  CHECK(l3[2].real() == doctest::Approx(1));
  CHECK(cycle::circulant_eigenvalues(5)[1].real() == doctest::Approx(3.618034).epsilon(1e-6));
  CHECK(cycle::eigenvalue_closed_form(3, 0).real() == doctest::Approx(1.6));
  CHECK(cycle::eigenvalue_closed_form(5, 0).real() == doctest::Approx(4));
  CHECK(cycle::circulant_eigenvalues(5)[0].real() == doctest::Approx(20));
}

TEST_CASE("root of unity sums") {
  CHECK(cycle::root_of_unity_sum(3, 0) == Rational(-3, 4));
  CHECK(cycle::root_of_unity_sum(3, 1) == Rational(9, 4));
  CHECK(cycle::root_of_unity_sum(3, 2) == Rational(-3, 4));
  CHECK(cycle::root_of_unity_sum(3, 5) == cycle::root_of_unity_sum(3, 2));
  for (int l = 1; l <= 21; l += 2)
    for (int j = 0; j < l; ++j) {
      const auto direct = oracle::root_sum(l, j);
      const double closed = static_cast<double>(cycle::root_of_unity_sum(l, j));
      CHECK(std::abs(static_cast<double>(direct.real()) - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
      CHECK(std::abs(static_cast<double>(direct.imag())) <= 1e-9);
      CHECK(std::abs(cycle::root_of_unity_sum_direct(l, j) - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("g_L three ways") {
  CHECK(cycle::g_closed(3, 0) == 2);
  CHECK(cycle::g_closed(3, 1) == -1);
  CHECK(cycle::g_closed(5, 0) == 2);
  for (int l = 3; l <= 21; l += 2)
    for (int j = 0; j < l; ++j) {
      const Rational closed = cycle::g_closed(l, j);
      CHECK(closed == cycle::g_expansion(l, j));
      const auto direct = cycle::g_direct(l, j);
      CHECK(std::abs(direct - static_cast<double>(closed)) <=
            1e-9 * std::max(1.0, std::abs(static_cast<double>(closed))));
    }
}

TEST_CASE("inverse Laplacian blocks") {
  const auto b = cycle::inverse_laplacian_blocks(3);
  CHECK(b.corner == Rational(1, 9));
  CHECK(b.border == Rational(-1, 18));
  CHECK(b.circulant[0] == Rational(7, 9));
  CHECK(b.circulant[1] == Rational(-2, 9));
  for (int l = 3; l <= 17; l += 2) {
    const auto tiles = homogenized_tiles(make_cycle(l));
    const MatrixXd d = incidence_matrix(tiles, l);
    const MatrixXd delta = d * d.transpose();
    const MatrixXd inv = cycle::inverse_laplacian_closed(l);
    CHECK((delta * inv - MatrixXd::Identity(l + 1, l + 1)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((inv - pseudo_inverse_on_image(delta)).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((inv - inv.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("tile probability curves") {
  const double hat = static_cast<double>(cycle::alpha_hat(11));
  const double one[] = {hat};
  const auto at_hat = cycle::tile_probability_curves(11, one);
  REQUIRE(at_hat[0].size_probability.size() == 6);
  for (double p : at_hat[0].size_probability) CHECK(p == doctest::Approx(1.0 / 199).epsilon(1e-10));
  CHECK(at_hat[0].sigma == doctest::Approx(std::log(199.0)).epsilon(1e-10));

  const double tiny[] = {1e-4};
  CHECK(cycle::tile_probability_curves(3, tiny)[0].size_probability[0] > 0.999);

  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(i * (10.0 / 11) / 51);
  const auto curve = cycle::tile_probability_curves(11, grid);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    CHECK(curve[i].x0 < curve[i - 1].x0);
    CHECK(curve[i].x1 > curve[i - 1].x1);
  }
  const double bad[] = {10.0 / 11};
  CHECK_THROWS_AS(cycle::tile_probability_curves(11, bad), NotFeasible);
}

TEST_CASE("growth rate at alpha hat equals log Lucas") {
  for (int l = 3; l <= 13; l += 2) {
    const double a[] = {static_cast<double>(cycle::alpha_hat(l)) - 0.02,
                        static_cast<double>(cycle::alpha_hat(l)),
                        static_cast<double>(cycle::alpha_hat(l)) + 0.02};
    const auto c = cycle::tile_probability_curves(l, a);
    CHECK(std::abs(c[1].sigma - std::log(static_cast<double>(oracle::lucas(l)))) <= 1e-8);
    CHECK(c[0].sigma < c[1].sigma);
    CHECK(c[2].sigma < c[1].sigma);
  }
}
