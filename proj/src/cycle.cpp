#include "multiweb/cycle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "multiweb/errors.hpp"
#include "multiweb/fibonacci.hpp"
#include "multiweb/gauge.hpp"
#include "multiweb/graph.hpp"

namespace multiweb::cycle {

namespace {

void require_odd(int length, int minimum = 3) {
  if (length < minimum || length % 2 == 0)
    throw InvalidArgument("cycle length must be odd and >= " +
                          std::to_string(minimum) + ", got " +
                          std::to_string(length));
}

int wrap(int l, int length) { return ((l % length) + length) % length; }

std::complex<double> root_of_unity(int length, long long power) {
  const double angle = 2.0 * std::numbers::pi *
                       static_cast<double>(power % length) / length;
  return std::polar(1.0, angle);
}

}  // namespace

CycleParams::CycleParams(int length) : length_(length) {
  require_odd(length);
  fib_.reserve(2 * length + 3);
  fib_.push_back(1);  // F_{-1}
  fib_.push_back(0);  // F_0
  for (int k = 1; k <= 2 * length + 1; ++k) fib_.push_back(fib_[k] + fib_[k - 1]);
  tile_count_ = fib_[length] + fib_[length + 2];
}

const BigInt& CycleParams::fib(int k) const {
  if (k < -1 || k > 2 * length_ + 1)
    throw InvalidArgument("fibonacci index out of cached range");
  return fib_[k + 1];
}

double reduced_poly_closed(int length, double x0, double x1) {
  if (length < 1) throw InvalidArgument("cycle length must be >= 1");
  const double root = std::sqrt(x0 * x0 + 4.0 * x1 * x1);
  return std::ldexp(std::pow(x0 - root, length) + std::pow(x0 + root, length),
                    -length);
}

double line_poly_closed(int length, double x0, double x1) {
  if (length < 0) throw InvalidArgument("path length must be >= 0");
  const double root = std::sqrt(x0 * x0 + 4.0 * x1 * x1);
  return std::ldexp(1.0, -(length + 1)) / root *
         (std::pow(x0 + root, length + 1) - std::pow(x0 - root, length + 1));
}

std::vector<BigInt> size_counts(int length) {
  require_odd(length);
  // Coefficients in t = x1^2 of Q^n with x0 = 1.
  using Poly = std::vector<BigInt>;
  auto add_shifted = [](const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size() + 1));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i + 1] += b[i];
    return out;
  };
  std::vector<Poly> q{{1}, {1}};
  for (int n = 2; n <= length; ++n) q.push_back(add_shifted(q[n - 1], q[n - 2]));
  Poly p = add_shifted(q[length], q[length - 2]);
  p.resize((length - 1) / 2 + 1);
  return p;
}

Rational alpha_hat(int length) {
  const CycleParams c(length);
  return Rational(1) - Rational(c.fib(length), c.tile_count());
}

Rational alpha_hat_from_tiles(const std::vector<HomogenizedTile>& tiles,
                              int length) {
  if (tiles.empty()) throw InvalidArgument("empty tile list");
  BigInt total_size = 0;
  for (const auto& t : tiles) total_size += t.size();
  return Rational(2 * total_size,
                  BigInt(length) * BigInt(tiles.size()));
}

Rational alpha_hat_from_line_counts(int length) {
  require_odd(length);
  return Rational(1) - Rational(count_tiles(make_path(length - 1)),
                                count_tiles(make_cycle(length)));
}

std::vector<BigInt> circulant_entries(int length) {
  const CycleParams c(length);
  const int l = length;
  std::vector<BigInt> out(l);
  out[0] = 2 * c.fib(l - 1);
  for (int k = 1; k < l; ++k)
    out[k] = c.fib(k) * c.fib(l - k - 2) + 2 * c.fib(k - 1) * c.fib(l - k - 1) +
             c.fib(k - 2) * c.fib(l - k);
  return out;
}

Rational laplacian_corner(int length) {
  const CycleParams c(length);
  const int l = length;
  return Rational(l, 5) *
         (Rational(4 * c.fib(l)) + Rational(l) * Rational(c.fib(2 * l), c.fib(l)));
}

Rational laplacian_border(int length) {
  const CycleParams c(length);
  const int l = length;
  return -Rational(1, 5) * (Rational((4 - 5 * l) * c.fib(l)) +
                            Rational(l) * Rational(c.fib(2 * l), c.fib(l)));
}

BigInt lambda_zero(int length) {
  BigInt sum = 0;
  for (const BigInt& c : circulant_entries(length)) sum += c;
  return sum;
}

std::vector<std::complex<double>> circulant_eigenvalues(int length) {
  const auto c = circulant_entries(length);
  std::vector<std::complex<double>> lambda(length);
  for (int k = 0; k < length; ++k) {
    std::complex<double> sum = 0.0;
    for (int j = 0; j < length; ++j)
      sum += static_cast<double>(c[j]) *
             root_of_unity(length, static_cast<long long>(k) * j);
    lambda[k] = sum;
  }
  return lambda;
}

std::complex<double> eigenvalue_closed_form(int length, int k) {
  const CycleParams c(length);
  const std::complex<double> w = root_of_unity(length, wrap(k, length));
  return static_cast<double>(c.fib(length)) * (1.0 + w) * (1.0 + w) /
         (1.0 + 3.0 * w + w * w);
}

Rational root_of_unity_sum(int length, int l) {
  require_odd(length, 1);
  const int r = wrap(l, length);
  const BigInt big_l = length;
  if (r == 0) return -Rational(big_l * (length - 2), 4);
  const int sign = (r + 1) % 2 == 0 ? 1 : -1;
  return Rational(sign * big_l * (length - 2 * r + 2), 4);
}

std::complex<double> root_of_unity_sum_direct(int length, int l) {
  require_odd(length, 1);
  std::complex<double> sum = 0.0;
  for (int k = 0; k < length; ++k) {
    const std::complex<double> z = root_of_unity(length, k);
    sum += root_of_unity(length, static_cast<long long>(k) * wrap(l, length)) /
           ((z + 1.0) * (z + 1.0));
  }
  return sum;
}

Rational g_closed(int length, int l) {
  const CycleParams c(length);
  const int r = wrap(l, length);
  const BigInt denom = 4 * c.fib(length);
  if (r == 0) return Rational(BigInt(length) * (length + 4) - 5, denom);
  const int sign = r % 2 == 0 ? 1 : -1;
  return Rational(BigInt(sign) * length * (length - 2 * r) - 5, denom);
}

Rational g_expansion(int length, int l) {
  const CycleParams c(length);
  const Rational sum = Rational(-5, 4) + root_of_unity_sum(length, l) +
                       3 * root_of_unity_sum(length, l + 1) +
                       root_of_unity_sum(length, l + 2);
  return sum / Rational(c.fib(length));
}

std::complex<double> g_direct(int length, int l) {
  const auto lambda = circulant_eigenvalues(length);
  std::complex<double> sum = 0.0;
  for (int k = 1; k < length; ++k)
    sum += root_of_unity(length,
                         static_cast<long long>(k) * wrap(l, length)) /
           lambda[k];
  return sum;
}

InverseLaplacianBlocks inverse_laplacian_blocks(int length) {
  const CycleParams c(length);
  const Rational corner = laplacian_corner(length);
  const Rational border = laplacian_border(length);
  const Rational lambda0(lambda_zero(length));
  const Rational det = lambda0 * corner - Rational(length) * border * border;

  InverseLaplacianBlocks out;
  out.corner = lambda0 / det;
  out.border = -border / det;
  out.circulant.resize(length);
  const Rational shift = corner / det;
  for (int l = 0; l < length; ++l)
    out.circulant[l] = (shift + g_closed(length, l)) / Rational(length);
  return out;
}

std::vector<CurvePoint> tile_probability_curves(int length,
                                                std::span<const double> alphas) {
  require_odd(length);
  const auto counts = size_counts(length);
  const int sizes = static_cast<int>(counts.size());
  TileFamily family;
  family.exponents.resize(2, sizes);
  family.log_weights.resize(sizes);
  for (int s = 0; s < sizes; ++s) {
    family.exponents(0, s) = length - 2 * s;
    family.exponents(1, s) = 2 * s;
    family.log_weights(s) = std::log(static_cast<double>(counts[s]));
  }

  std::vector<CurvePoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    VectorXd target(2);
    target << length * (1.0 - alpha), length * alpha;
    if (!(alpha > 0.0) ||
        check_feasible(family.exponents, target) !=
            Feasibility::strictly_feasible)
      throw NotFeasible("density " + std::to_string(alpha) +
                        " outside (0, (L-1)/L)");
    const CriticalGauge g = solve_critical_gauge(family, target);
    CurvePoint p;
    p.alpha = alpha;
    p.x0 = g.x(0);
    p.x1 = g.x(1);
    p.sigma = g.sigma;
    const double y0 = std::log(p.x0), y1 = std::log(p.x1);
    for (int s = 0; s < sizes; ++s)
      p.size_probability.push_back(std::exp((length - 2 * s) * y0 + 2 * s * y1));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace multiweb::cycle
