#ifndef MULTIWEB_SAMPLER_HPP
#define MULTIWEB_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "multiweb/laplacian.hpp"
#include "multiweb/tiles.hpp"
#include "multiweb/types.hpp"

namespace multiweb {

/// A coloured multiweb: the tile index used by each colour.
struct Multiweb {
  std::vector<std::uint32_t> assignment;

  /// X_t for each of `tile_count` tiles.
  std::vector<int> tile_counts(std::size_t tile_count) const;
  /// Covered multiplicity of every vertex 1..V.
  std::vector<int> vertex_counts(const std::vector<HomogenizedTile>& tiles,
                                 int vertex_count) const;
};

/// Exact law of the multiweb measure on a tiny instance.
struct ExactLaw {
  Rational partition_function;
  std::map<std::vector<int>, Rational> counts_law;   // X -> probability
  std::map<std::vector<std::uint32_t>, Rational> states;  // when requested
};

/// Depth-first enumeration of all colour assignments with vertex-budget
/// pruning. Throws ResourceLimit once more than max_nodes search nodes are
/// visited.
ExactLaw enumerate_multiwebs(const std::vector<HomogenizedTile>& tiles,
                             const std::vector<Rational>& weights,
                             const std::vector<int>& target, int colors,
                             bool keep_states = false,
                             std::uint64_t max_nodes = 100'000'000);

/// Portable random source: mt19937_64 output mapped to uniforms by hand so
/// streams agree across standard libraries.
class Rng {
 public:
  static constexpr const char* kAlgorithm =
      "mt19937_64 seeded by splitmix64(seed, stream); 53-bit uniforms";

  Rng(std::uint64_t seed, std::uint64_t stream);
  double uniform();
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct ChainConfig {
  std::uint64_t seed = 1;
  long long sweeps = 10'000;  // total, including burn-in
  long long burn_in = 1'000;
  long long thinning = 1;

  void validate() const;
};

/// Pair heat-bath chain. One move picks an unordered pair of colours and
/// resamples their tiles from w'(a) w'(b) over all ordered tile pairs with
/// the same combined vertex multiplicities. A sweep is N moves.
class HeatBathChain {
 public:
  HeatBathChain(const std::vector<HomogenizedTile>& tiles,
                std::vector<double> weights, std::vector<int> target,
                int colors, std::uint64_t seed, std::uint64_t stream = 0,
                std::optional<Multiweb> initial = std::nullopt);

  void move();
  void sweep();
  const Multiweb& state() const { return state_; }
  const std::vector<int>& tile_counts() const { return counts_; }
  bool valid() const;
  int colors() const { return colors_; }

 private:
  Multiweb initial_state() const;

  const std::vector<HomogenizedTile>& tiles_;
  std::vector<double> weights_;
  std::vector<int> target_;
  int colors_;
  Rng rng_;
  std::size_t tile_count_;
  std::vector<std::uint32_t> group_of_pair_;  // a * T + b -> group
  struct Group {
    std::vector<std::uint32_t> pairs;  // a * T + b
    std::vector<double> cumulative;
  };
  std::vector<Group> groups_;
  Multiweb state_;
  std::vector<int> counts_;
};

/// Receives (chain, frame index, state) for every emitted sample.
using FrameSink =
    std::function<void(int, std::uint64_t, const Multiweb&)>;

/// Writes one frame: 8-byte little-endian counter then N little-endian
/// uint32 tile indices.
void write_frame(std::ostream& out, std::uint64_t counter, const Multiweb& m);

struct EntryCheck {
  std::size_t a = 0;
  std::size_t b = 0;
  double empirical = 0.0;
  double predicted = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  bool flagged = false;
};

struct SamplerReport {
  std::string rng;
  int chains = 0;
  long long samples = 0;      // all chains
  long long batches = 0;      // per chain
  double max_split_rhat = 0.0;
  double total_count_variance = 0.0;  // variance of sum_t X_t
  long long invalid_states = 0;
  std::vector<EntryCheck> means;
  std::vector<EntryCheck> covariances;  // per colour, i.e. divided by N
  int flagged = 0;
  bool rhat_ok = false;
};

/// Runs independent chains on up to `threads` threads (0 = MULTIWEB_THREADS
/// or hardware concurrency), then compares per-tile means and (1/N)
/// covariances with `law` using batch-means standard errors and a 5 SE
/// flag. Covariances are checked in full for at most `full_covariance_limit`
/// tiles, otherwise only the diagonal.
SamplerReport empirical_vs_gaussian(const std::vector<HomogenizedTile>& tiles,
                                    const std::vector<double>& weights,
                                    const std::vector<int>& target, int colors,
                                    const ChainConfig& config, int chains,
                                    const GaussianLaw<double>& law,
                                    int threads = 0,
                                    const FrameSink& sink = {},
                                    std::size_t full_covariance_limit = 32);

/// Split-R-hat for one scalar across chains (each chain split in half).
double split_rhat(const std::vector<std::vector<double>>& chains);

}  // namespace multiweb

#endif  // MULTIWEB_SAMPLER_HPP
