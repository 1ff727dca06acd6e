#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "multiweb/cycle.hpp"
#include "multiweb/errors.hpp"
#include "multiweb/fibonacci.hpp"
#include "multiweb/gauge.hpp"
#include "multiweb/graph.hpp"
#include "multiweb/io.hpp"
#include "multiweb/laplacian.hpp"
#include "multiweb/partition.hpp"
#include "multiweb/sampler.hpp"
#include "multiweb/tiles.hpp"
#include "multiweb/verify.hpp"
#include "multiweb/window.hpp"

using namespace multiweb;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;
constexpr int kExitConvergence = 4;
constexpr int kExitVerification = 5;

struct Options {
  std::string graph;
  int length = 0;
  int colors = 0;
  std::string alpha = "critical";
  std::string weights = "uniform";
  std::string n;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  double tol = 1e-12;
  std::uint64_t max_states = kDefaultMaxStates;
  bool quick = false;
  long long sweeps = 20'000;
  long long burn_in = 2'000;
  long long thinning = 1;
  int chains = 4;
  std::string frames;
  std::string alphas = "0.05:0.85:0.05";
};

std::string rational_string(const Rational& r) {
  std::ostringstream s;
  s << r;
  return s.str();
}

Graph load_graph(const Options& o) {
  if (o.graph.empty()) {
    if (o.length > 0) return make_cycle(o.length);
    throw InvalidArgument("give --graph or --L");
  }
  const auto colon = o.graph.find(':');
  if (colon != std::string::npos) {
    const std::string family = o.graph.substr(0, colon);
    const int size = std::stoi(o.graph.substr(colon + 1));
    if (family == "cycle") return make_cycle(size);
    if (family == "path") return make_path(size);
    throw InvalidArgument("unknown builtin graph family \"" + family + "\"");
  }
  return io::read_graph_json(o.graph);
}

json parse_json_argument(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("bad JSON argument: ") + e.what());
  }
}

std::vector<double> load_weights(const Options& o, std::size_t tile_count) {
  std::vector<double> w(tile_count, 1.0);
  if (o.weights == "uniform") return w;
  const json j = parse_json_argument(o.weights);
  if (j.is_array()) {
    if (j.size() != tile_count)
      throw InvalidArgument("--weights lists " + std::to_string(j.size()) +
                            " values for " + std::to_string(tile_count) + " tiles");
    for (std::size_t t = 0; t < tile_count; ++t) w[t] = j[t].get<double>();
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::size_t t = std::stoul(key);
      if (t >= tile_count) throw InvalidArgument("weight index " + key + " out of range");
      w[t] = value.get<double>();
    }
  } else {
    throw InvalidArgument("--weights must be \"uniform\", a JSON array or object");
  }
  for (double x : w)
    if (!(x > 0.0)) throw InvalidArgument("tile weights must be positive");
  return w;
}

// Densities alpha_1..alpha_V. "critical" means the weights are already
// critical: alpha = D w / sum w.
VectorXd load_alpha(const Options& o, const std::vector<HomogenizedTile>& tiles,
                    const std::vector<double>& w, int vertex_count) {
  if (o.alpha == "critical") {
    VectorXd a = VectorXd::Zero(vertex_count);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t t = 0; t < tiles.size(); ++t)
      for (int v : tiles[t].tile.vertices) a(v - 1) += w[t] / total;
    return a;
  }
  const json j = parse_json_argument(o.alpha);
  if (j.is_number()) return VectorXd::Constant(vertex_count, j.get<double>());
  if (j.is_array() && j.size() == static_cast<std::size_t>(vertex_count)) {
    VectorXd a(vertex_count);
    for (int v = 0; v < vertex_count; ++v) a(v) = j[v].get<double>();
    return a;
  }
  throw InvalidArgument("--alpha must be \"critical\", a number or one value per vertex");
}

std::vector<int> parse_int_list(const std::string& text) {
  const json j = parse_json_argument("[" + text + "]");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(x.get<int>());
  return out;
}

void emit(const Options& o, const std::string& contents,
          const std::string& suffix = "") {
  if (o.out.empty()) {
    std::cout << contents;
    return;
  }
  io::atomic_write(o.out + suffix, contents);
}

std::string tile_label(const Graph& g, const Tile& t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const Edge& e = g.edges()[t.edges[i]];
    if (i) s += ' ';
    s += std::to_string(e.u) + "-" + std::to_string(e.v);
  }
  return s + "}";
}

std::vector<std::string> tile_labels(const Graph& g,
                                     const std::vector<HomogenizedTile>& tiles) {
  std::vector<std::string> out;
  for (const auto& t : tiles) out.push_back(tile_label(g, t.tile));
  return out;
}

json vector_json(const VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

int run_tiles(const Options& o) {
  const Graph g = load_graph(o);
  const auto tiles = homogenized_tiles(g, o.max_states);
  if (o.format == "json") {
    json j;
    j["tiles"] = tiles.size();
    j["order"] = "size-then-lex";
    json list = json::array();
    for (std::size_t t = 0; t < tiles.size(); ++t)
      list.push_back({{"index", t}, {"size", tiles[t].size()},
                      {"vertices", tiles[t].tile.vertices},
                      {"edges", tile_label(g, tiles[t].tile)}});
    j["list"] = std::move(list);
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream s;
    io::write_csv_row(s, {"index", "size", "edges"});
    for (std::size_t t = 0; t < tiles.size(); ++t)
      io::write_csv_row(s, {std::to_string(t), std::to_string(tiles[t].size()),
                            tile_label(g, tiles[t].tile)});
    emit(o, s.str());
  }
  return 0;
}

std::vector<int> load_target(const Options& o, int vertex_count) {
  if (!o.n.empty()) {
    auto n = parse_int_list(o.n);
    if (n.size() != static_cast<std::size_t>(vertex_count))
      throw InvalidArgument("--n needs one multiplicity per vertex");
    return n;
  }
  const json j = parse_json_argument(o.alpha == "critical" ? "null" : o.alpha);
  if (!j.is_number()) throw InvalidArgument("give --n or a numeric --alpha");
  const double n = j.get<double>() * o.colors;
  if (std::abs(n - std::round(n)) > 1e-9)
    throw InvalidArgument("alpha * N must be an integer");
  return std::vector<int>(vertex_count, static_cast<int>(std::round(n)));
}

int run_zexact(const Options& o) {
  if (o.colors < 1) throw InvalidArgument("--N must be >= 1");
  const Graph g = load_graph(o);
  const auto tiles = homogenized_tiles(g);
  const auto w = load_weights(o, tiles.size());
  const auto target = load_target(o, g.vertex_count());
  const bool integral = std::all_of(w.begin(), w.end(), [](double x) {
    return x == std::floor(x) && x < 1e15;
  });
  json j;
  j["N"] = o.colors;
  j["n"] = target;
  if (integral) {
    std::vector<BigInt> wi;
    for (double x : w) wi.push_back(BigInt(static_cast<long long>(x)));
    const BigInt z = partition_function_exact<BigInt>(tiles, wi, target, o.colors, o.max_states);
    j["Z"] = z.str();
    j["log_Z_per_color"] = z == 0 ? -INFINITY : std::log(static_cast<double>(z)) / o.colors;
    if (z != 0) {
      const auto m = exact_moments<Rational, BigInt>(tiles, wi, target, o.colors, o.max_states);
      json mean = json::array();
      for (const auto& x : m.mean) mean.push_back(rational_string(x));
      j["mean"] = mean;
      json cov = json::array();
      for (std::size_t a = 0; a < tiles.size(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < tiles.size(); ++b)
          row.push_back(static_cast<double>(m.covariance(a, b)));
        cov.push_back(row);
      }
      j["covariance"] = cov;
    }
  } else {
    const double z = partition_function_exact<double>(tiles, w, target, o.colors, o.max_states);
    j["Z"] = z;
    j["log_Z_per_color"] = std::log(z) / o.colors;
  }
  emit(o, j.dump(2) + "\n");
  return 0;
}

CriticalGauge solve_gauge(const Options& o, const Graph& g,
                          const std::vector<HomogenizedTile>& tiles,
                          const std::vector<double>& w) {
  const VectorXd a = load_alpha(o, tiles, w, g.vertex_count());
  GaugeOptions opts;
  opts.tol = o.tol;
  return solve_critical_gauge(tiles, w, DensityVector::from_vertices(a), opts);
}

int run_gauge(const Options& o) {
  const Graph g = load_graph(o);
  const auto tiles = homogenized_tiles(g);
  const auto w = load_weights(o, tiles.size());
  const CriticalGauge c = solve_gauge(o, g, tiles, w);
  json j;
  j["x"] = vector_json(c.x);
  j["critical_weights"] = vector_json(c.critical_weights);
  j["sigma"] = c.sigma;
  j["residuals"] = vector_json(c.residual);
  j["iterations"] = c.iterations;
  emit(o, j.dump(2) + "\n");
  return 0;
}

void emit_matrix(const Options& o, const MatrixXd& m, const json& meta,
                 const std::vector<std::string>& labels) {
  if (o.format == "json") {
    json j = meta;
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json r = json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
      rows.push_back(r);
    }
    j["matrix"] = rows;
    emit(o, j.dump(2) + "\n");
    return;
  }
  emit(o, io::matrix_csv(m, labels, labels));
  if (!o.out.empty()) io::atomic_write(o.out + ".json", meta.dump(2) + "\n");
  else std::cerr << meta.dump() << "\n";
}

int run_cov(const Options& o) {
  const Graph g = load_graph(o);
  const auto tiles = homogenized_tiles(g);
  const auto w = load_weights(o, tiles.size());
  const CriticalGauge c = solve_gauge(o, g, tiles, w);
  const MatrixXd d = incidence_matrix(tiles, g.vertex_count());
  const double n = o.colors > 0 ? o.colors : 1.0;
  const auto law = gaussian_law(d, c.critical_weights, n);
  json meta{{"tiles", tiles.size()}, {"order", "size-then-lex"},
            {"scaled_by", "1/N"}, {"N", n}, {"vertex_count", g.vertex_count()}};
  if (o.length > 0) meta["L"] = o.length;
  emit_matrix(o, law.covariance / n, meta, tile_labels(g, tiles));
  return 0;
}

int run_cycle(const Options& o, const std::string& what) {
  const int l = o.length;
  if (l < 3 || l % 2 == 0) throw InvalidArgument("cycle needs odd --L >= 3");
  json j{{"L", l}};
  if (what == "alpha-hat") {
    const Rational a = cycle::alpha_hat(l);
    std::cout << rational_string(a) << "\n" << io::format_double(static_cast<double>(a)) << "\n";
    return 0;
  }
  if (what == "cov") {
    Options local = o;
    local.graph.clear();
    local.alpha = "critical";
    local.weights = "uniform";
    return run_cov(local);
  }
  if (what == "curves") {
    std::vector<double> alphas;
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(o.alphas.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
      throw InvalidArgument("--alphas must be lo:hi:step");
    const int points = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (int i = 0; i < points; ++i) alphas.push_back(lo + i * step);
    const auto curve = cycle::tile_probability_curves(l, alphas);
    std::ostringstream s;
    io::write_csv_row(s, {"alpha", "size", "probability", "sigma"});
    for (const auto& p : curve)
      for (std::size_t k = 0; k < p.size_probability.size(); ++k)
        io::write_csv_row(s, {io::format_double(p.alpha), std::to_string(k),
                              io::format_double(p.size_probability[k]),
                              io::format_double(p.sigma)});
    emit(o, s.str());
    return 0;
  }
  if (what == "inverse") {
    emit_matrix(o, cycle::inverse_laplacian_closed(l), j, {});
    return 0;
  }
  if (what == "eigen") {
    const auto dft = cycle::circulant_eigenvalues(l);
    std::ostringstream s;
    io::write_csv_row(s, {"k", "dft", "closed_form"});
    for (int k = 0; k < l; ++k)
      io::write_csv_row(s, {std::to_string(k), io::format_double(dft[k].real()),
                            io::format_double(cycle::eigenvalue_closed_form(l, k).real())});
    emit(o, s.str());
    return 0;
  }
  if (what == "summary") {
    const cycle::CycleParams p(l);
    j["tiles"] = p.tile_count().str();
    j["alpha_hat"] = rational_string(cycle::alpha_hat(l));
    j["sigma"] = std::log(static_cast<double>(p.tile_count()));
    json c = json::array();
    for (const auto& x : cycle::circulant_entries(l)) c.push_back(x.str());
    j["circulant_entries"] = c;
    j["laplacian_corner"] = rational_string(cycle::laplacian_corner(l));
    j["laplacian_border"] = rational_string(cycle::laplacian_border(l));
    j["lambda_zero"] = cycle::lambda_zero(l).str();
    json g = json::array(), a = json::array();
    for (int k = 0; k < l; ++k) {
      g.push_back(rational_string(cycle::g_closed(l, k)));
      a.push_back(rational_string(cycle::root_of_unity_sum(l, k)));
    }
    j["g"] = g;
    j["root_of_unity_sums"] = a;
    json sizes = json::array();
    for (const auto& x : cycle::size_counts(l)) sizes.push_back(x.str());
    j["size_counts"] = sizes;
    emit(o, j.dump(2) + "\n");
    return 0;
  }
  throw InvalidArgument("unknown cycle query \"" + what + "\"");
}

int run_window(const Options& o) {
  const double n = o.colors > 0 ? o.colors : 1.0;
  const auto law = window::local_law(o.length, n);
  const auto& configs = window::enumerate_local_configs();
  json meta{{"L", o.length}, {"N", n}, {"scaled_by", "1/N"}};
  json list = json::array();
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < configs.size(); ++j) {
    std::string label = "{";
    for (std::size_t k = 0; k < configs[j].edges.size(); ++k)
      label += (k ? " " : "") + std::to_string(configs[j].edges[k]);
    label += "}";
    labels.push_back(label);
    list.push_back({{"index", j}, {"slots", configs[j].edges}, {"f", configs[j].f},
                    {"epsilon", configs[j].epsilon},
                    {"mean_per_color", law.mean(j) / n}});
  }
  meta["configurations"] = list;
  emit_matrix(o, law.covariance / n, meta, labels);
  return 0;
}

json report_json(const SamplerReport& r) {
  auto entries = [](const std::vector<EntryCheck>& v) {
    json a = json::array();
    for (const auto& e : v)
      a.push_back({{"a", e.a}, {"b", e.b}, {"empirical", e.empirical},
                   {"predicted", e.predicted}, {"se", e.standard_error},
                   {"z", e.z}, {"flagged", e.flagged}});
    return a;
  };
  return {{"rng", r.rng}, {"chains", r.chains}, {"samples", r.samples},
          {"batches_per_chain", r.batches}, {"max_split_rhat", r.max_split_rhat},
          {"rhat_ok", r.rhat_ok}, {"total_count_variance", r.total_count_variance},
          {"invalid_states", r.invalid_states}, {"flagged", r.flagged},
          {"means", entries(r.means)}, {"covariances_per_color", entries(r.covariances)}};
}

int run_sample(const Options& o) {
  if (o.colors < 2) throw InvalidArgument("--N must be >= 2");
  const Graph g = load_graph(o);
  const auto tiles = homogenized_tiles(g);
  const auto w = load_weights(o, tiles.size());
  const CriticalGauge c = solve_gauge(o, g, tiles, w);
  const VectorXd a = load_alpha(o, tiles, w, g.vertex_count());
  std::vector<int> target;
  for (Eigen::Index v = 0; v < a.size(); ++v) {
    const double n = a(v) * o.colors;
    if (std::abs(n - std::round(n)) > 1e-6)
      throw InvalidArgument("alpha_v * N must be an integer at every vertex");
    target.push_back(static_cast<int>(std::round(n)));
  }
  const MatrixXd d = incidence_matrix(tiles, g.vertex_count());
  const auto law = gaussian_law(d, c.critical_weights, static_cast<double>(o.colors));
  ChainConfig cfg{o.seed, o.sweeps, o.burn_in, o.thinning};
  std::vector<double> wp(c.critical_weights.data(),
                         c.critical_weights.data() + c.critical_weights.size());
  std::optional<std::ofstream> frames;
  FrameSink sink;
  if (!o.frames.empty()) {
    frames.emplace(o.frames, std::ios::binary | std::ios::trunc);
    if (!*frames) throw InvalidArgument("cannot write " + o.frames);
    sink = [&](int chain, std::uint64_t i, const Multiweb& m) {
      if (chain == 0) write_frame(*frames, i, m);
    };
  }
  const SamplerReport r = empirical_vs_gaussian(tiles, wp, target, o.colors, cfg,
                                                o.chains, law, 0, sink);
  emit(o, report_json(r).dump(2) + "\n");
  return r.flagged == 0 && r.rhat_ok && r.invalid_states == 0 ? 0 : kExitVerification;
}

int run_verify(const Options& o) {
  bool all = true;
  for (const auto& r : run_verification(o.quick)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    all = all && r.passed;
  }
  return all ? 0 : kExitVerification;
}

int report_error(const char* kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump()
            << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coloured multiweb / partial dimer tilings"};
  app.require_subcommand(1);
  Options o;

  auto graph_opts = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "JSON graph file, or cycle:L / path:n");
    sub->add_option("--L", o.length, "Cycle length");
    sub->add_option("--weights", o.weights, "uniform, or JSON array/object of tile weights");
    sub->add_option("--out", o.out, "Output path (written atomically)");
    sub->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--max-states", o.max_states, "State / tile cap");
  };

  auto* tiles = app.add_subcommand("tiles", "Enumerate tiles in canonical order");
  graph_opts(tiles);

  auto* zexact = app.add_subcommand("zexact", "Exact partition function and moments");
  graph_opts(zexact);
  zexact->add_option("--N", o.colors, "Number of colors")->required();
  zexact->add_option("--n", o.n, "Vertex multiplicities, comma separated");
  zexact->add_option("--alpha", o.alpha, "Uniform density (n_v = alpha N)");

  auto* gauge = app.add_subcommand("gauge", "Critical gauge and growth rate");
  graph_opts(gauge);
  gauge->add_option("--alpha", o.alpha, "critical, a number, or JSON vector");
  gauge->add_option("--tol", o.tol, "Newton tolerance");

  auto* cov = app.add_subcommand("cov", "Gaussian covariance of tile counts, scaled by 1/N");
  graph_opts(cov);
  cov->add_option("--alpha", o.alpha, "critical, a number, or JSON vector");
  cov->add_option("--N", o.colors, "Number of colors");
  cov->add_option("--tol", o.tol, "Newton tolerance");

  auto* cyc = app.add_subcommand("cycle", "Closed forms for odd cycles");
  std::string query = "summary";
  cyc->add_option("--L", o.length, "Odd cycle length")->required();
  cyc->add_option("query", query,
                  "summary | alpha-hat | cov | curves | inverse | eigen")
      ->check(CLI::IsMember({"summary", "alpha-hat", "cov", "curves", "inverse", "eigen"}));
  cyc->add_option("--out", o.out, "Output path");
  cyc->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  cyc->add_option("--alphas", o.alphas, "Density grid lo:hi:step for curves");
  cyc->add_option("--N", o.colors, "Number of colors");

  auto* win = app.add_subcommand("window", "Local window law, scaled by 1/N");
  win->add_option("--L", o.length, "Odd cycle length >= 11")->required();
  win->add_option("--N", o.colors, "Number of colors");
  win->add_option("--out", o.out, "Output path");
  win->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* sample = app.add_subcommand("sample", "MCMC check of the Gaussian law");
  graph_opts(sample);
  sample->add_option("--N", o.colors, "Number of colors")->required();
  sample->add_option("--alpha", o.alpha, "critical, a number, or JSON vector");
  sample->add_option("--seed", o.seed);
  sample->add_option("--sweeps", o.sweeps);
  sample->add_option("--burn-in", o.burn_in);
  sample->add_option("--thinning", o.thinning);
  sample->add_option("--chains", o.chains);
  sample->add_option("--frames", o.frames, "Binary frame output for chain 0");
  sample->add_option("--tol", o.tol, "Newton tolerance");

  auto* verify = app.add_subcommand("verify", "Cross-oracle invariant suite");
  verify->add_flag("--quick", o.quick);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("InvalidArgument", e.what(), kExitValidation);
  }

  try {
    if (*tiles) return run_tiles(o);
    if (*zexact) return run_zexact(o);
    if (*gauge) return run_gauge(o);
    if (*cov) return run_cov(o);
    if (*cyc) return run_cycle(o, query);
    if (*win) return run_window(o);
    if (*sample) return run_sample(o);
    if (*verify) return run_verify(o);
  } catch (const ResourceLimit& e) {
    return report_error(e.kind(), e.what(), kExitResource);
  } catch (const NoConvergence& e) {
    return report_error(e.kind(), e.what(), kExitConvergence);
  } catch (const Error& e) {
    return report_error(e.kind(), e.what(), kExitValidation);
  } catch (const std::exception& e) {
    return report_error("InvalidArgument", e.what(), kExitValidation);
  }
  return kExitValidation;
}
