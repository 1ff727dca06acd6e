#ifndef MULTIWEB_CYCLE_HPP
#define MULTIWEB_CYCLE_HPP

#include <complex>
#include <span>
#include <vector>

#include "multiweb/tiles.hpp"
#include "multiweb/types.hpp"

/// Closed forms for the odd cycle with unit tile weights and a constant
/// vertex density. Every function taking `length` rejects even or too small
/// lengths with InvalidArgument unless documented otherwise.
namespace multiweb::cycle {

/// Odd cycle length L >= 3 with cached Fibonacci numbers F_{-1}..F_{2L+1}.
class CycleParams {
 public:
  explicit CycleParams(int length);

  int length() const { return length_; }
  /// F_k for -1 <= k <= 2L + 1.
  const BigInt& fib(int k) const;
  /// |T| = Lucas_L.
  const BigInt& tile_count() const { return tile_count_; }

 private:
  int length_;
  std::vector<BigInt> fib_;  // fib_[k + 1] = F_k
  BigInt tile_count_;
};

/// P_0^L(x0, x1) from the radical closed form (any L >= 1).
double reduced_poly_closed(int length, double x0, double x1);
/// Q_0^L(x0, x1) for the path on L vertices from its closed form (L >= 0).
double line_poly_closed(int length, double x0, double x1);

/// Q_0^L by the recurrence Q^L = x0 Q^{L-1} + x1^2 Q^{L-2}; exact for exact
/// scalars.
template <typename Scalar>
Scalar line_poly_recurrence(int length, const Scalar& x0, const Scalar& x1) {
  Scalar previous(1), current(x0);  // Q^0, Q^1
  if (length == 0) return previous;
  for (int n = 2; n <= length; ++n) {
    Scalar next = x0 * current + x1 * x1 * previous;
    previous = current;
    current = next;
  }
  return current;
}

/// P_0^L = Q_0^L + x1^2 Q_0^{L-2} (L >= 2).
template <typename Scalar>
Scalar cycle_poly_recurrence(int length, const Scalar& x0, const Scalar& x1) {
  return line_poly_recurrence(length, x0, x1) +
         x1 * x1 * line_poly_recurrence(length - 2, x0, x1);
}

/// Number of tiles of each size s = 0..(L-1)/2 on the L-cycle.
std::vector<BigInt> size_counts(int length);

/// Critical density 1 - F_L / Lucas_L.
Rational alpha_hat(int length);
/// 2 sum_t s(t) / (L |T|) from an explicit tile list.
Rational alpha_hat_from_tiles(const std::vector<HomogenizedTile>& tiles,
                              int length);
/// 1 - W_{L-1} / Y_L from path and cycle tile counts.
Rational alpha_hat_from_line_counts(int length);

/// c_0 = 2 F_{L-1}, c_k = F_k F_{L-k-2} + 2 F_{k-1} F_{L-k-1} + F_{k-2} F_{L-k}.
std::vector<BigInt> circulant_entries(int length);

/// Delta_00 = (L/5)(4 F_L + L F_{2L}/F_L).
Rational laplacian_corner(int length);
/// Delta_0v = -(1/5)((4 - 5L) F_L + L F_{2L}/F_L).
Rational laplacian_border(int length);
/// lambda_0 = sum_k c_k.
BigInt lambda_zero(int length);

/// lambda_k = sum_j c_j omega^{kj}.
std::vector<std::complex<double>> circulant_eigenvalues(int length);
/// F_L (1 + w)^2 / (1 + 3w + w^2) with w = omega^k. Agrees with the DFT
/// only for k != 0.
std::complex<double> eigenvalue_closed_form(int length, int k);

/// a_l = sum_{z^L = 1} z^l / (z + 1)^2 in closed form (odd L >= 1, l taken
/// mod L).
Rational root_of_unity_sum(int length, int l);
std::complex<double> root_of_unity_sum_direct(int length, int l);

/// g_L(l) = sum_{k=1}^{L-1} omega^{kl} / lambda_k: closed form, a_l
/// expansion, and direct sum over the DFT eigenvalues.
Rational g_closed(int length, int l);
Rational g_expansion(int length, int l);
std::complex<double> g_direct(int length, int l);

/// Block structure of Delta^{-1} (Delta = D D^T, unit weights): the v_0
/// corner, the constant border, and the circulant block A with
/// A_ij = circulant[(i - j) mod L].
struct InverseLaplacianBlocks {
  Rational corner;
  Rational border;
  std::vector<Rational> circulant;
};

InverseLaplacianBlocks inverse_laplacian_blocks(int length);

template <typename Scalar = double>
Matrix<Scalar> inverse_laplacian_closed(int length) {
  const InverseLaplacianBlocks b = inverse_laplacian_blocks(length);
  std::vector<Scalar> a(b.circulant.size());
  for (std::size_t l = 0; l < a.size(); ++l)
    a[l] = static_cast<Scalar>(b.circulant[l]);
  Matrix<Scalar> inv(length + 1, length + 1);
  inv(0, 0) = static_cast<Scalar>(b.corner);
  const Scalar border = static_cast<Scalar>(b.border);
  for (int i = 1; i <= length; ++i) {
    inv(0, i) = inv(i, 0) = border;
    for (int j = 1; j <= length; ++j)
      inv(i, j) = a[((i - j) % length + length) % length];
  }
  return inv;
}

/// Critical weights per tile size as the uniform density varies.
struct CurvePoint {
  double alpha = 0.0;
  double x0 = 0.0;
  double x1 = 0.0;
  double sigma = 0.0;
  std::vector<double> size_probability;  // index = tile size
};

/// Solves the symmetric two-variable criticality system for each alpha in
/// (0, (L-1)/L); NotFeasible outside.
std::vector<CurvePoint> tile_probability_curves(int length,
                                                std::span<const double> alphas);

}  // namespace multiweb::cycle

#endif  // MULTIWEB_CYCLE_HPP
