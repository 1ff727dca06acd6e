#include "multiweb/window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "multiweb/cycle.hpp"
#include "multiweb/errors.hpp"
#include "multiweb/fibonacci.hpp"
#include "multiweb/graph.hpp"

namespace multiweb::window {

namespace {

void require_length(int length) {
  if (length % 2 == 0 || length < 3)
    throw InvalidArgument("cycle length must be odd and >= 3, got " +
                          std::to_string(length));
  if (length < kMinLength)
    throw WindowWraps("window needs L >= " + std::to_string(kMinLength) +
                      ", got " + std::to_string(length));
}

std::vector<LocalConfiguration> build_configs() {
  std::vector<LocalConfiguration> out;
  for (int mask = 0; mask < (1 << kWindowEdges); ++mask) {
    // slots k and k+1 share window vertex k
    if (mask & (mask >> 1)) continue;
    LocalConfiguration c;
    for (int s = 0; s < kWindowEdges; ++s)
      if (mask >> s & 1) c.edges.push_back(s);
    c.f = static_cast<int>(c.edges.size());
    c.epsilon = (mask & 1) + (mask >> 5 & 1);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.f != b.f) return a.f < b.f;
    return a.edges < b.edges;
  });
  return out;
}

int wrap_vertex(int v, int length) { return ((v - 1) % length + length) % length + 1; }

}  // namespace

bool LocalConfiguration::uses(int slot) const {
  return std::find(edges.begin(), edges.end(), slot) != edges.end();
}

const std::vector<LocalConfiguration>& enumerate_local_configs() {
  static const std::vector<LocalConfiguration> configs = build_configs();
  return configs;
}

int config_index(const std::vector<int>& slots) {
  const auto& configs = enumerate_local_configs();
  for (std::size_t j = 0; j < configs.size(); ++j)
    if (configs[j].edges == slots) return static_cast<int>(j);
  return -1;
}

BigInt class_size(int length, const LocalConfiguration& config) {
  require_length(length);
  return fibonacci(length - config.epsilon - 4);
}

MatrixXd Aggregation::matrix() const {
  MatrixXd b = MatrixXd::Zero(class_sizes.size(), class_of_tile.size());
  for (std::size_t t = 0; t < class_of_tile.size(); ++t)
    b(class_of_tile[t], t) = 1.0;
  return b;
}

Aggregation classify_tiles(int length, const std::vector<HomogenizedTile>& tiles,
                           int window_start) {
  require_length(length);
  const Graph g = make_cycle(length);
  std::array<int, kWindowEdges> slot_edge{};
  for (int s = 0; s < kWindowEdges; ++s) {
    const int a = wrap_vertex(window_start + s - 1, length);
    const int b = wrap_vertex(window_start + s, length);
    slot_edge[s] = g.edge_index(a, b);
  }

  Aggregation out;
  out.class_sizes.assign(kConfigurationCount, 0);
  out.class_of_tile.reserve(tiles.size());
  for (const auto& t : tiles) {
    std::vector<int> slots;
    for (int s = 0; s < kWindowEdges; ++s)
      if (std::binary_search(t.tile.edges.begin(), t.tile.edges.end(),
                             slot_edge[s]))
        slots.push_back(s);
    const int j = config_index(slots);
    if (j < 0) throw std::logic_error("tile restriction is not a configuration");
    out.class_of_tile.push_back(j);
    out.class_sizes[j] += 1;
  }
  return out;
}

std::vector<std::vector<BigInt>> aggregated_incidence(int length) {
  require_length(length);
  const cycle::CycleParams fib(length);
  const auto& configs = enumerate_local_configs();
  std::vector<std::vector<BigInt>> rows(configs.size(),
                                        std::vector<BigInt>(length + 1));
  for (std::size_t j = 0; j < configs.size(); ++j) {
    const auto& c = configs[j];
    auto& row = rows[j];
    // Free path on v_first..v_last; its matchings complete the class.
    const int first = c.uses(5) ? 7 : 6;
    const int last = c.uses(0) ? length - 1 : length;
    const int m = last - first + 1;
    const BigInt& size = fib.fib(m + 1);
    for (int s : c.edges) {
      row[s == 0 ? length : s] = size;
      row[s + 1] = size;
    }
    for (int p = 1; p <= m; ++p)
      row[first + p - 1] = size - fib.fib(p) * fib.fib(m - p + 1);
    BigInt covered = 0;
    for (int v = 1; v <= length; ++v) covered += row[v];
    row[0] = BigInt(length) * size - covered;
  }
  return rows;
}

GaussianLaw<double> local_law(int length, double colors) {
  require_length(length);
  const cycle::CycleParams params(length);
  const Rational total(params.tile_count());
  const auto rows = aggregated_incidence(length);
  const auto& configs = enumerate_local_configs();
  const int j_count = static_cast<int>(configs.size());

  // Work with p = B D^T / |T| and |T| Delta^{-1}, both O(1).
  MatrixXd p(j_count, length + 1);
  for (int j = 0; j < j_count; ++j)
    for (int v = 0; v <= length; ++v)
      p(j, v) = static_cast<double>(Rational(rows[j][v]) / total);

  const cycle::InverseLaplacianBlocks blocks =
      cycle::inverse_laplacian_blocks(length);
  MatrixXd inv(length + 1, length + 1);
  inv(0, 0) = static_cast<double>(blocks.corner * total);
  const double border = static_cast<double>(blocks.border * total);
  std::vector<double> a(length);
  for (int l = 0; l < length; ++l)
    a[l] = static_cast<double>(blocks.circulant[l] * total);
  for (int i = 1; i <= length; ++i) {
    inv(0, i) = inv(i, 0) = border;
    for (int k = 1; k <= length; ++k) inv(i, k) = a[((i - k) % length + length) % length];
  }

  VectorXd share(j_count);
  for (int j = 0; j < j_count; ++j)
    share(j) = static_cast<double>(
        Rational(fibonacci(length - configs[j].epsilon - 4)) / total);

  MatrixXd cov = MatrixXd(share.asDiagonal()) - p * inv * p.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  GaussianLaw<double> law;
  law.mean = colors * share;
  law.covariance = colors * cov;
  law.scale = colors;
  return law;
}

GaussianLaw<double> local_law_explicit(int length, double colors) {
  require_length(length);
  const auto tiles = homogenized_tiles(make_cycle(length));
  const MatrixXd d = incidence_matrix(tiles, length);
  const VectorXd c = VectorXd::Constant(tiles.size(), 1.0 / tiles.size());
  const GaussianLaw<double> x = gaussian_law(d, c, colors);
  const MatrixXd b = classify_tiles(length, tiles).matrix();
  GaussianLaw<double> law;
  law.mean = b * x.mean;
  law.covariance = b * x.covariance * b.transpose();
  law.scale = colors;
  return law;
}

LimitMoments local_limits(int epsilon, int f, double colors) {
  if (epsilon < 0 || epsilon > 2 || f < 0 || f > 3 || epsilon > f)
    throw InvalidArgument("no configuration with epsilon=" +
                          std::to_string(epsilon) + ", f=" + std::to_string(f));
  const double phi = std::numbers::phi;
  const double sqrt5 = std::sqrt(5.0);
  LimitMoments out;
  out.mean = colors * std::pow(phi, -epsilon - 4) / sqrt5;
  out.variance = out.mean * (1.0 - (epsilon + f / phi + (11.0 + sqrt5) / 2.0) /
                                       std::pow(phi, epsilon + 6));
  return out;
}

std::array<int, kConfigurationCount> reflection_permutation() {
  const auto& configs = enumerate_local_configs();
  std::array<int, kConfigurationCount> perm{};
  for (std::size_t j = 0; j < configs.size(); ++j) {
    std::vector<int> mirrored;
    for (int s : configs[j].edges) mirrored.push_back(kWindowEdges - 1 - s);
    std::sort(mirrored.begin(), mirrored.end());
    perm[j] = config_index(mirrored);
  }
  return perm;
}

}  // namespace multiweb::window
