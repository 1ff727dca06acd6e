#ifndef MULTIWEB_PARTITION_HPP
#define MULTIWEB_PARTITION_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "multiweb/errors.hpp"
#include "multiweb/tiles.hpp"

namespace multiweb {

inline constexpr std::uint64_t kDefaultMaxStates = 100'000'000;

/// Coefficients [x^r] P(x)^k of the (non-homogenized) tiling polynomial for
/// every residual r <= n componentwise and k in {N-2, N-1, N}.
///
/// Built by dynamic programming over colours; the state is the residual
/// multiplicity vector in mixed radix, colours outermost and residuals in
/// lexicographic order, so floating results are bit-reproducible. The
/// multiplicity of the zero vertex is implied (N V - sum n_v) and a negative
/// value makes every entry zero.
template <typename Scalar>
class PartitionTable {
 public:
  PartitionTable(const std::vector<HomogenizedTile>& tiles,
                 std::vector<Scalar> weights, std::vector<int> target,
                 int colors, std::uint64_t max_states = kDefaultMaxStates)
      : weights_(std::move(weights)), target_(std::move(target)),
        colors_(colors) {
    if (colors < 1) throw InvalidArgument("number of colors must be >= 1");
    if (weights_.size() != tiles.size())
      throw InvalidArgument("one weight per tile required");
    const int vertex_count = static_cast<int>(target_.size());
    strides_.resize(vertex_count);
    std::uint64_t states = 1;
    long long covered = 0;
    for (int v = 0; v < vertex_count; ++v) {
      if (target_[v] < 0)
        throw InvalidArgument("vertex multiplicities must be >= 0");
      strides_[v] = states;
      states *= static_cast<std::uint64_t>(target_[v]) + 1;
      covered += target_[v];
      if (states > max_states)
        throw ResourceLimit("partition-function state space exceeds cap");
    }
    if (states * static_cast<std::uint64_t>(colors) > max_states)
      throw ResourceLimit("state count times colors " +
                          std::to_string(states * colors) + " exceeds cap " +
                          std::to_string(max_states));
    state_count_ = states;
    zero_multiplicity_ =
        static_cast<long long>(colors) * vertex_count - covered;

    for (const HomogenizedTile& t : tiles) {
      std::vector<int> cover;
      std::uint64_t offset = 0;
      for (int v : t.tile.vertices) {
        if (v < 1 || v > vertex_count)
          throw InvalidArgument("tile vertex outside target vector");
        cover.push_back(v - 1);
        offset += strides_[v - 1];
      }
      cover_.push_back(std::move(cover));
      offsets_.push_back(offset);
    }
    run();
  }

  int colors() const { return colors_; }
  long long zero_multiplicity() const { return zero_multiplicity_; }
  std::uint64_t state_count() const { return state_count_; }

  /// Z_{w,n,N}.
  Scalar total() const { return at(target_, colors_); }

  /// [x^r] P^k; zero when r is not <= n componentwise.
  Scalar at(std::span<const int> residual, int k) const {
    if (k < colors_ - 2 || k > colors_ || k < 0)
      throw InvalidArgument("color count outside stored layers");
    if (zero_multiplicity_ < 0) return Scalar(0);
    std::uint64_t index = 0;
    for (std::size_t v = 0; v < residual.size(); ++v) {
      if (residual[v] < 0 || residual[v] > target_[v]) return Scalar(0);
      index += strides_[v] * residual[v];
    }
    return layers_[colors_ - k][index];
  }

  const std::vector<int>& target() const { return target_; }

 private:
  void run() {
    const std::size_t vertex_count = target_.size();
    std::vector<Scalar> previous(state_count_, Scalar(0));
    previous[0] = Scalar(1);
    // layers_[0] = N colors, [1] = N-1, [2] = N-2.
    if (colors_ <= 2) layers_[colors_] = previous;
    std::vector<int> digits(vertex_count);
    for (int k = 1; k <= colors_; ++k) {
      std::vector<Scalar> current(state_count_, Scalar(0));
      std::fill(digits.begin(), digits.end(), 0);
      for (std::uint64_t r = 0; r < state_count_; ++r) {
        Scalar sum(0);
        for (std::size_t t = 0; t < cover_.size(); ++t) {
          bool fits = true;
          for (int v : cover_[t])
            if (digits[v] == 0) {
              fits = false;
              break;
            }
          if (fits) sum += weights_[t] * previous[r - offsets_[t]];
        }
        current[r] = std::move(sum);
        for (std::size_t v = 0; v < vertex_count; ++v) {
          if (++digits[v] <= target_[v]) break;
          digits[v] = 0;
        }
      }
      const int slot = colors_ - k;
      if (slot <= 2) layers_[slot] = current;
      previous = std::move(current);
    }
  }

  std::vector<Scalar> weights_;
  std::vector<int> target_;
  int colors_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t state_count_ = 0;
  long long zero_multiplicity_ = 0;
  std::vector<std::vector<int>> cover_;
  std::vector<std::uint64_t> offsets_;
  std::array<std::vector<Scalar>, 3> layers_;
};

/// Z_{w,n,N} = [x^n] P(x)^N.
template <typename Scalar>
Scalar partition_function_exact(const std::vector<HomogenizedTile>& tiles,
                                std::vector<Scalar> weights,
                                std::vector<int> target, int colors,
                                std::uint64_t max_states = kDefaultMaxStates) {
  return PartitionTable<Scalar>(tiles, std::move(weights), std::move(target),
                                colors, max_states)
      .total();
}

/// First and second moments of the tile counts X_t under the multiweb
/// measure, stored densely (second moments row-major).
template <typename Scalar>
struct TileMoments {
  std::size_t tile_count = 0;
  std::vector<Scalar> mean;
  std::vector<Scalar> second;

  const Scalar& second_moment(std::size_t a, std::size_t b) const {
    return second[a * tile_count + b];
  }
  Scalar covariance(std::size_t a, std::size_t b) const {
    return second_moment(a, b) - mean[a] * mean[b];
  }
};

/// Exact moments from ratios of partition functions:
///   E X_t = N w(t) Z(n - t, N-1) / Z(n, N),
///   E X_t X_u = [t = u] E X_t + N (N-1) w(t) w(u) Z(n - t - u, N-2) / Z.
/// `Field` must support exact or floating division; the table itself is
/// accumulated in `Ring` (e.g. BigInt for integer weights).
template <typename Field, typename Ring = Field>
TileMoments<Field> exact_moments(const std::vector<HomogenizedTile>& tiles,
                                 const std::vector<Ring>& weights,
                                 const std::vector<int>& target, int colors,
                                 std::uint64_t max_states = kDefaultMaxStates) {
  PartitionTable<Ring> table(tiles, weights, target, colors, max_states);
  const Ring z_ring = table.total();
  if (z_ring == Ring(0))
    throw InfeasibleMultiplicity("no multiweb has the requested multiplicities");
  const Field z(z_ring);
  const std::size_t count = tiles.size();
  const int vertex_count = static_cast<int>(target.size());

  TileMoments<Field> m;
  m.tile_count = count;
  m.mean.assign(count, Field(0));
  m.second.assign(count * count, Field(0));

  auto subtract = [&](std::vector<int>& r, const HomogenizedTile& t) {
    for (int v : t.tile.vertices) --r[v - 1];
  };
  std::vector<int> r1(vertex_count), r2(vertex_count);
  for (std::size_t a = 0; a < count; ++a) {
    r1 = target;
    subtract(r1, tiles[a]);
    m.mean[a] = Field(colors) * Field(weights[a]) *
                Field(table.at(r1, colors - 1)) / z;
    if (colors < 2) continue;
    for (std::size_t b = 0; b < count; ++b) {
      r2 = r1;
      subtract(r2, tiles[b]);
      m.second[a * count + b] = Field(colors) * Field(colors - 1) *
                                Field(weights[a]) * Field(weights[b]) *
                                Field(table.at(r2, colors - 2)) / z;
    }
  }
  for (std::size_t a = 0; a < count; ++a) m.second[a * count + a] += m.mean[a];
  return m;
}

}  // namespace multiweb

#endif  // MULTIWEB_PARTITION_HPP
