#include "multiweb/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "multiweb/errors.hpp"

namespace multiweb {

std::vector<int> Multiweb::tile_counts(std::size_t tile_count) const {
  std::vector<int> counts(tile_count, 0);
  for (std::uint32_t t : assignment) ++counts.at(t);
  return counts;
}

std::vector<int> Multiweb::vertex_counts(
    const std::vector<HomogenizedTile>& tiles, int vertex_count) const {
  std::vector<int> counts(vertex_count, 0);
  for (std::uint32_t t : assignment)
    for (int v : tiles.at(t).tile.vertices) ++counts[v - 1];
  return counts;
}

namespace {

void check_target(const std::vector<HomogenizedTile>& tiles,
                  const std::vector<int>& target, int colors) {
  if (colors < 1) throw InvalidArgument("number of colors must be >= 1");
  if (tiles.empty()) throw InvalidArgument("empty tile list");
  for (int n : target)
    if (n < 0) throw InvalidArgument("vertex multiplicities must be >= 0");
  for (const auto& t : tiles)
    for (int v : t.tile.vertices)
      if (v < 1 || v > static_cast<int>(target.size()))
        throw InvalidArgument("tile vertex outside target vector");
}

struct Enumerator {
  const std::vector<HomogenizedTile>& tiles;
  const std::vector<Rational>& weights;
  int colors;
  bool keep_states;
  std::uint64_t max_nodes;
  std::uint64_t nodes = 0;
  int max_tile_size = 0;
  std::vector<int> residual{};
  long long residual_total = 0;
  std::vector<std::uint32_t> assignment{};
  std::vector<int> counts{};
  ExactLaw law{};

  void run(int depth, const Rational& weight) {
    if (++nodes > max_nodes)
      throw ResourceLimit("multiweb enumeration exceeds node cap");
    if (depth == colors) {
      if (residual_total != 0) return;
      law.partition_function += weight;
      law.counts_law[counts] += weight;
      if (keep_states) law.states[assignment] += weight;
      return;
    }
    if (residual_total > 2LL * max_tile_size * (colors - depth)) return;
    for (std::size_t t = 0; t < tiles.size(); ++t) {
      const auto& cover = tiles[t].tile.vertices;
      bool fits = true;
      for (int v : cover)
        if (residual[v - 1] == 0) {
          fits = false;
          break;
        }
      if (!fits) continue;
      for (int v : cover) --residual[v - 1];
      residual_total -= static_cast<long long>(cover.size());
      assignment[depth] = static_cast<std::uint32_t>(t);
      ++counts[t];
      run(depth + 1, weight * weights[t]);
      --counts[t];
      residual_total += static_cast<long long>(cover.size());
      for (int v : cover) ++residual[v - 1];
    }
  }
};

}  // namespace

ExactLaw enumerate_multiwebs(const std::vector<HomogenizedTile>& tiles,
                             const std::vector<Rational>& weights,
                             const std::vector<int>& target, int colors,
                             bool keep_states, std::uint64_t max_nodes) {
  check_target(tiles, target, colors);
  if (weights.size() != tiles.size())
    throw InvalidArgument("one weight per tile required");
  for (const auto& w : weights)
    if (w <= 0) throw InvalidArgument("tile weights must be positive");
  Enumerator e{tiles, weights, colors, keep_states, max_nodes};
  for (const auto& t : tiles) e.max_tile_size = std::max(e.max_tile_size, t.size());
  e.residual = target;
  e.residual_total = std::accumulate(target.begin(), target.end(), 0LL);
  e.assignment.assign(colors, 0);
  e.counts.assign(tiles.size(), 0);
  e.run(0, Rational(1));
  const Rational z = e.law.partition_function;
  if (z != 0) {
    for (auto& [key, p] : e.law.counts_law) p /= z;
    for (auto& [key, p] : e.law.states) p /= z;
  }
  return std::move(e.law);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("empty range");
  // Rejection on the top bits keeps the draw unbiased.
  const int bits = std::bit_width(bound - 1);
  for (;;) {
    const std::uint64_t x = bits == 0 ? 0 : engine_() >> (64 - bits);
    if (x < bound) return x;
  }
}

void ChainConfig::validate() const {
  if (sweeps <= 0 || burn_in <= 0 || thinning <= 0)
    throw InvalidArgument("sweeps, burn_in and thinning must be positive");
  if (sweeps <= burn_in) throw InvalidArgument("sweeps must exceed burn_in");
}

HeatBathChain::HeatBathChain(const std::vector<HomogenizedTile>& tiles,
                             std::vector<double> weights,
                             std::vector<int> target, int colors,
                             std::uint64_t seed, std::uint64_t stream,
                             std::optional<Multiweb> initial)
    : tiles_(tiles), weights_(std::move(weights)), target_(std::move(target)),
      colors_(colors), rng_(seed, stream), tile_count_(tiles.size()) {
  check_target(tiles_, target_, colors_);
  if (colors_ < 2) throw InvalidArgument("pair moves need at least 2 colors");
  if (weights_.size() != tile_count_)
    throw InvalidArgument("one weight per tile required");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w))
      throw InvalidArgument("tile weights must be positive and finite");
  if (tile_count_ * tile_count_ > 16'000'000)
    throw ResourceLimit("too many tile pairs for the pair move table");

  const int vertex_count = static_cast<int>(target_.size());
  std::map<std::vector<int>, std::uint32_t> ids;
  group_of_pair_.resize(tile_count_ * tile_count_);
  std::vector<int> key(vertex_count);
  for (std::size_t a = 0; a < tile_count_; ++a)
    for (std::size_t b = 0; b < tile_count_; ++b) {
      std::fill(key.begin(), key.end(), 0);
      for (int v : tiles_[a].tile.vertices) ++key[v - 1];
      for (int v : tiles_[b].tile.vertices) ++key[v - 1];
      auto [it, inserted] =
          ids.emplace(key, static_cast<std::uint32_t>(groups_.size()));
      if (inserted) groups_.emplace_back();
      Group& g = groups_[it->second];
      const double prev = g.cumulative.empty() ? 0.0 : g.cumulative.back();
      g.pairs.push_back(static_cast<std::uint32_t>(a * tile_count_ + b));
      g.cumulative.push_back(prev + weights_[a] * weights_[b]);
      group_of_pair_[a * tile_count_ + b] = it->second;
    }

  state_ = initial ? std::move(*initial) : initial_state();
  if (state_.assignment.size() != static_cast<std::size_t>(colors_))
    throw InvalidArgument("initial multiweb has wrong number of colors");
  for (std::uint32_t t : state_.assignment)
    if (t >= tile_count_) throw InvalidArgument("initial tile index out of range");
  counts_ = state_.tile_counts(tile_count_);
  if (!valid()) throw InitFailure("initial multiweb violates multiplicities");
}

Multiweb HeatBathChain::initial_state() const {
  const int vertex_count = static_cast<int>(target_.size());
  const double total_weight =
      std::accumulate(weights_.begin(), weights_.end(), 0.0);
  std::vector<long long> k(tile_count_);
  std::vector<std::pair<double, std::size_t>> remainder;
  long long assigned = 0;
  for (std::size_t t = 0; t < tile_count_; ++t) {
    const double share = colors_ * weights_[t] / total_weight;
    k[t] = static_cast<long long>(std::floor(share));
    assigned += k[t];
    remainder.emplace_back(share - k[t], t);
  }
  std::stable_sort(remainder.begin(), remainder.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (long long i = 0; assigned < colors_; ++i, ++assigned)
    ++k[remainder[i % remainder.size()].second];

  std::vector<long long> residual(target_.begin(), target_.end());
  for (std::size_t t = 0; t < tile_count_; ++t)
    for (int v : tiles_[t].tile.vertices) residual[v - 1] -= k[t];
  auto cost = [&] {
    long long c = 0;
    for (long long r : residual) c += std::llabs(r);
    return c;
  };
  auto shift = [&](std::size_t t, long long by) {
    k[t] += by;
    for (int v : tiles_[t].tile.vertices) residual[v - 1] -= by;
  };

  long long current = cost();
  const long long max_rounds = 10LL * colors_ * vertex_count + 100;
  for (long long round = 0; current > 0 && round < max_rounds; ++round) {
    long long best = current;
    std::size_t best_from = 0, best_to = 0;
    for (std::size_t a = 0; a < tile_count_; ++a) {
      if (k[a] == 0) continue;
      for (std::size_t b = 0; b < tile_count_; ++b) {
        if (a == b) continue;
        shift(a, -1);
        shift(b, +1);
        const long long c = cost();
        shift(b, -1);
        shift(a, +1);
        if (c < best) {
          best = c;
          best_from = a;
          best_to = b;
        }
      }
    }
    if (best >= current) break;
    shift(best_from, -1);
    shift(best_to, +1);
    current = best;
  }
  if (current != 0)
    throw InitFailure("greedy repair left residual " + std::to_string(current));

  Multiweb m;
  m.assignment.reserve(colors_);
  for (std::size_t t = 0; t < tile_count_; ++t)
    for (long long i = 0; i < k[t]; ++i)
      m.assignment.push_back(static_cast<std::uint32_t>(t));
  return m;
}

void HeatBathChain::move() {
  const auto i = static_cast<std::size_t>(rng_.below(colors_));
  auto j = static_cast<std::size_t>(rng_.below(colors_ - 1));
  if (j >= i) ++j;
  std::uint32_t& a = state_.assignment[i];
  std::uint32_t& b = state_.assignment[j];
  const Group& g = groups_[group_of_pair_[a * tile_count_ + b]];
  std::size_t pick = 0;
  if (g.pairs.size() > 1) {
    const double u = rng_.uniform() * g.cumulative.back();
    pick = static_cast<std::size_t>(
        std::upper_bound(g.cumulative.begin(), g.cumulative.end(), u) -
        g.cumulative.begin());
    pick = std::min(pick, g.pairs.size() - 1);
  }
  --counts_[a];
  --counts_[b];
  a = static_cast<std::uint32_t>(g.pairs[pick] / tile_count_);
  b = static_cast<std::uint32_t>(g.pairs[pick] % tile_count_);
  ++counts_[a];
  ++counts_[b];
}

void HeatBathChain::sweep() {
  for (int m = 0; m < colors_; ++m) move();
}

bool HeatBathChain::valid() const {
  return state_.vertex_counts(tiles_, static_cast<int>(target_.size())) ==
         target_;
}

void write_frame(std::ostream& out, std::uint64_t counter, const Multiweb& m) {
  unsigned char buffer[8];
  for (int i = 0; i < 8; ++i) buffer[i] = static_cast<unsigned char>(counter >> (8 * i));
  out.write(reinterpret_cast<const char*>(buffer), 8);
  for (std::uint32_t t : m.assignment) {
    for (int i = 0; i < 4; ++i) buffer[i] = static_cast<unsigned char>(t >> (8 * i));
    out.write(reinterpret_cast<const char*>(buffer), 4);
  }
}

namespace {

struct HalfStats {
  double n = 0, sum = 0, sum_sq = 0;
  void add(double x) {
    n += 1;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return sum / n; }
  double variance() const {
    return n > 1 ? (sum_sq - sum * sum / n) / (n - 1) : 0.0;
  }
};

double rhat_from_halves(const std::vector<HalfStats>& halves) {
  const double m = static_cast<double>(halves.size());
  if (m < 2) return 1.0;
  double n = halves[0].n;
  for (const auto& h : halves) n = std::min(n, h.n);
  if (n < 2) return 1.0;
  double grand = 0, within = 0;
  for (const auto& h : halves) {
    grand += h.mean();
    within += h.variance();
  }
  grand /= m;
  within /= m;
  double between = 0;
  for (const auto& h : halves) between += (h.mean() - grand) * (h.mean() - grand);
  between *= n / (m - 1);
  if (within <= 0.0) return between <= 0.0 ? 1.0 : INFINITY;
  const double pooled = (n - 1) / n * within + between / n;
  return std::sqrt(pooled / within);
}

struct ChainStats {
  std::vector<std::vector<double>> batch_sum;      // per batch, per tile
  std::vector<std::vector<double>> batch_product;  // per batch, per entry
  std::vector<std::vector<HalfStats>> halves;      // [2][tile]
  std::vector<double> sum, product;
  double total_sum = 0, total_sq = 0;
  long long samples = 0;
  long long invalid = 0;
};

int resolve_threads(int requested, int chains) {
  int threads = requested;
  if (threads <= 0) {
    if (const char* env = std::getenv("MULTIWEB_THREADS")) threads = std::atoi(env);
  }
  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::clamp(threads, 1, std::max(1, chains));
}

}  // namespace

double split_rhat(const std::vector<std::vector<double>>& chains) {
  std::vector<HalfStats> halves;
  for (const auto& c : chains) {
    const std::size_t half = c.size() / 2;
    HalfStats first, second;
    for (std::size_t i = 0; i < half; ++i) first.add(c[i]);
    for (std::size_t i = c.size() - half; i < c.size(); ++i) second.add(c[i]);
    halves.push_back(first);
    halves.push_back(second);
  }
  return rhat_from_halves(halves);
}

SamplerReport empirical_vs_gaussian(const std::vector<HomogenizedTile>& tiles,
                                    const std::vector<double>& weights,
                                    const std::vector<int>& target, int colors,
                                    const ChainConfig& config, int chains,
                                    const GaussianLaw<double>& law, int threads,
                                    const FrameSink& sink,
                                    std::size_t full_covariance_limit) {
  config.validate();
  if (chains < 1) throw InvalidArgument("at least one chain required");
  const std::size_t t_count = tiles.size();
  if (law.mean.size() != static_cast<Eigen::Index>(t_count))
    throw InvalidArgument("Gaussian law does not match the tile list");

  std::vector<std::pair<std::size_t, std::size_t>> entries;
  const bool full = t_count <= full_covariance_limit;
  for (std::size_t a = 0; a < t_count; ++a)
    for (std::size_t b = a; b < (full ? t_count : a + 1); ++b)
      entries.emplace_back(a, b);

  const long long emitted = (config.sweeps - config.burn_in) / config.thinning;
  const long long batches = std::clamp<long long>(emitted / 20, 1, 50);
  const long long batch_len = emitted / batches;
  const long long used = batch_len * batches;
  if (used < 2) throw InvalidArgument("too few emitted samples for statistics");

  std::vector<ChainStats> stats(chains);
  std::mutex sink_mutex;
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> failures(chains);

  auto worker = [&] {
    for (int c = next++; c < chains; c = next++) {
      try {
        HeatBathChain chain(tiles, weights, target, colors, config.seed, c);
        ChainStats& s = stats[c];
        s.batch_sum.assign(batches, std::vector<double>(t_count, 0.0));
        s.batch_product.assign(batches, std::vector<double>(entries.size(), 0.0));
        s.halves.assign(2, std::vector<HalfStats>(t_count));
        s.sum.assign(t_count, 0.0);
        s.product.assign(entries.size(), 0.0);
        for (long long k = 0; k < config.burn_in; ++k) chain.sweep();
        for (long long i = 0; i < used; ++i) {
          for (long long k = 0; k < config.thinning; ++k) chain.sweep();
          const auto& x = chain.tile_counts();
          if (i % 100 == 0 && !chain.valid()) ++s.invalid;
          const long long batch = i / batch_len;
          const int half = i < used / 2 ? 0 : 1;
          double total = 0;
          for (std::size_t t = 0; t < t_count; ++t) {
            s.batch_sum[batch][t] += x[t];
            s.sum[t] += x[t];
            s.halves[half][t].add(x[t]);
            total += x[t];
          }
          for (std::size_t e = 0; e < entries.size(); ++e) {
            const double p = double(x[entries[e].first]) * x[entries[e].second];
            s.batch_product[batch][e] += p;
            s.product[e] += p;
          }
          s.total_sum += total;
          s.total_sq += total * total;
          ++s.samples;
          if (sink) {
            std::lock_guard lock(sink_mutex);
            sink(c, static_cast<std::uint64_t>(i), chain.state());
          }
        }
      } catch (...) {
        failures[c] = std::current_exception();
      }
    }
  };
  const int thread_count = resolve_threads(threads, chains);
  std::vector<std::thread> pool;
  for (int i = 1; i < thread_count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  SamplerReport r;
  r.rng = Rng::kAlgorithm;
  r.chains = chains;
  r.batches = batches;
  const double n_total = static_cast<double>(used) * chains;
  r.samples = static_cast<long long>(n_total);

  std::vector<double> mean(t_count, 0.0);
  double total_sum = 0, total_sq = 0;
  for (const auto& s : stats) {
    for (std::size_t t = 0; t < t_count; ++t) mean[t] += s.sum[t] / n_total;
    total_sum += s.total_sum;
    total_sq += s.total_sq;
    r.invalid_states += s.invalid;
  }
  r.total_count_variance =
      std::max(0.0, total_sq / n_total - (total_sum / n_total) * (total_sum / n_total));

  auto finish = [](EntryCheck& e) {
    const double diff = std::abs(e.empirical - e.predicted);
    if (e.standard_error > 0.0) {
      e.z = (e.empirical - e.predicted) / e.standard_error;
      e.flagged = diff > 5.0 * e.standard_error;
    } else {
      e.z = 0.0;
      e.flagged = diff > 1e-9 * (1.0 + std::abs(e.predicted));
    }
  };
  const double all_batches = static_cast<double>(batches) * chains;
  for (std::size_t t = 0; t < t_count; ++t) {
    double sq = 0;
    for (const auto& s : stats)
      for (const auto& b : s.batch_sum) {
        const double d = b[t] / batch_len - mean[t];
        sq += d * d;
      }
    EntryCheck e;
    e.a = e.b = t;
    e.empirical = mean[t];
    e.predicted = law.mean(t);
    e.standard_error =
        all_batches > 1 ? std::sqrt(sq / (all_batches - 1) / all_batches) : 0.0;
    finish(e);
    r.means.push_back(e);
  }
  const double n_colors = colors;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto [a, b] = entries[k];
    double pooled = 0;
    for (const auto& s : stats) pooled += s.product[k] / n_total;
    const double estimate = (pooled - mean[a] * mean[b]) / n_colors;
    std::vector<double> per_batch;
    for (const auto& s : stats)
      for (long long q = 0; q < batches; ++q) {
        const double ma = s.batch_sum[q][a] / batch_len;
        const double mb = s.batch_sum[q][b] / batch_len;
        per_batch.push_back((s.batch_product[q][k] / batch_len - ma * mb) / n_colors);
      }
    const double bm =
        std::accumulate(per_batch.begin(), per_batch.end(), 0.0) / per_batch.size();
    double sq = 0;
    for (double v : per_batch) sq += (v - bm) * (v - bm);
    EntryCheck e;
    e.a = a;
    e.b = b;
    e.empirical = estimate;
    e.predicted = law.covariance(a, b) / n_colors;
    e.standard_error = per_batch.size() > 1
                           ? std::sqrt(sq / (per_batch.size() - 1) / per_batch.size())
                           : 0.0;
    finish(e);
    r.covariances.push_back(e);
  }

  r.max_split_rhat = 1.0;
  for (std::size_t t = 0; t < t_count; ++t) {
    std::vector<HalfStats> halves;
    for (const auto& s : stats) {
      halves.push_back(s.halves[0][t]);
      halves.push_back(s.halves[1][t]);
    }
    r.max_split_rhat = std::max(r.max_split_rhat, rhat_from_halves(halves));
  }
  r.rhat_ok = r.max_split_rhat <= 1.05;
  for (const auto& e : r.means) r.flagged += e.flagged;
  for (const auto& e : r.covariances) r.flagged += e.flagged;
  return r;
}

}  // namespace multiweb
