#ifndef MULTIWEB_WINDOW_HPP
#define MULTIWEB_WINDOW_HPP

#include <array>
#include <vector>

#include "multiweb/laplacian.hpp"
#include "multiweb/tiles.hpp"
#include "multiweb/types.hpp"

/// Statistics of tiles restricted to a five-vertex window v_w..v_{w+4} of
/// the odd cycle with unit weights at the critical density.
namespace multiweb::window {

inline constexpr int kWindowVertices = 5;
inline constexpr int kWindowEdges = 6;
inline constexpr int kConfigurationCount = 21;
/// Smallest odd cycle on which the window edges cannot interact.
inline constexpr int kMinLength = 11;

/// Window edge slots: 0 = (v_{w-1}, v_w), k = (v_{w+k-1}, v_{w+k}) for k >= 1.
struct LocalConfiguration {
  std::vector<int> edges;  // ascending slots
  int f = 0;               // edges used
  int epsilon = 0;         // endmost slots 0 and 5 used

  bool uses(int slot) const;
  friend bool operator==(const LocalConfiguration&,
                         const LocalConfiguration&) = default;
};

/// The 21 valid slot subsets ordered by f, then lexicographically.
const std::vector<LocalConfiguration>& enumerate_local_configs();

/// Index of a slot subset in enumerate_local_configs(), or -1.
int config_index(const std::vector<int>& slots);

/// F_{L - epsilon - 4}.
BigInt class_size(int length, const LocalConfiguration& config);

/// Class of each tile of cycle(L) under restriction to the window starting
/// at vertex window_start (1-based).
struct Aggregation {
  std::vector<int> class_of_tile;
  std::vector<BigInt> class_sizes;

  /// Dense 0/1 matrix B, configurations by tiles.
  MatrixXd matrix() const;
};

Aggregation classify_tiles(int length, const std::vector<HomogenizedTile>& tiles,
                           int window_start = 1);

/// B D^T computed combinatorially without enumerating tiles: row j holds
/// sum_{t in j} t_v for v = 0..L with the window at v_1..v_5.
std::vector<std::vector<BigInt>> aggregated_incidence(int length);

/// Gaussian law of S = B X with E(S) = (N/|T|) size and Cov(S) =
/// (N/|T|)(B B^T - B D^T (D D^T)^{-1} D B^T), assembled from the closed-form
/// inverse Laplacian. Valid for very large L.
GaussianLaw<double> local_law(int length, double colors);

/// Same law from explicit tiles as B Cov(X) B^T.
GaussianLaw<double> local_law_explicit(int length, double colors);

struct LimitMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// L -> infinity mean and variance of S_j.
LimitMoments local_limits(int epsilon, int f, double colors);

/// Permutation mapping configuration j of the window at v_1 to the matching
/// configuration under the reflection v_i -> v_{6-i}.
std::array<int, kConfigurationCount> reflection_permutation();

}  // namespace multiweb::window

#endif  // MULTIWEB_WINDOW_HPP
