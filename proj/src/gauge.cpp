#include "multiweb/gauge.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "multiweb/errors.hpp"
#include "multiweb/simplex.hpp"

namespace multiweb {

namespace {

struct Softmax {
  double log_partition;
  VectorXd probabilities;
};

Softmax softmax(const TileFamily& family, const VectorXd& log_x) {
  VectorXd a = family.log_weights + family.exponents.transpose() * log_x;
  const double top = a.maxCoeff();
  VectorXd q = (a.array() - top).exp();
  const double s = q.sum();
  return {top + std::log(s), q / s};
}

}  // namespace

TileFamily make_family(const std::vector<HomogenizedTile>& tiles,
                       std::span<const double> weights, int vertex_count) {
  if (weights.size() != tiles.size())
    throw InvalidArgument("one weight per tile required");
  TileFamily f;
  f.exponents = MatrixXd::Zero(vertex_count + 1, tiles.size());
  f.log_weights.resize(tiles.size());
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    if (!(weights[t] > 0.0))
      throw InvalidArgument("tile weights must be strictly positive");
    f.log_weights(t) = std::log(weights[t]);
    for (int v = 0; v <= vertex_count; ++v)
      f.exponents(v, t) = tiles[t].multiplicity(v);
  }
  return f;
}

DensityVector DensityVector::from_vertices(const VectorXd& vertex_densities) {
  const Eigen::Index n = vertex_densities.size();
  DensityVector d;
  d.full_.resize(n + 1);
  d.full_(0) = static_cast<double>(n) - vertex_densities.sum();
  d.full_.tail(n) = vertex_densities;
  if (n > 0 && !(vertex_densities.minCoeff() > 0.0))
    throw InvalidArgument("vertex densities must be positive");
  if (!(d.full_(0) > 0.0))
    throw InvalidArgument("zero-vertex density V - sum(alpha) must be positive");
  return d;
}

DensityVector DensityVector::uniform(int vertex_count, double alpha) {
  return from_vertices(VectorXd::Constant(vertex_count, alpha));
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::strictly_feasible: return "strictly-feasible";
    case Feasibility::boundary: return "boundary";
    case Feasibility::infeasible: return "infeasible";
  }
  return "?";
}

Feasibility check_feasible(const MatrixXd& incidence, const VectorXd& alpha_full,
                           double tol) {
  const Eigen::Index rows = incidence.rows(), tiles = incidence.cols();
  if (alpha_full.size() != rows)
    throw InvalidArgument("density vector length does not match incidence");
  // Variables (q, tau) >= 0 with p = q + tau 1; maximize tau.
  MatrixXd a(rows + 1, tiles + 1);
  a.topLeftCorner(rows, tiles) = incidence;
  a.col(tiles).head(rows) = incidence.rowwise().sum();
  a.row(rows).head(tiles).setOnes();
  a(rows, tiles) = static_cast<double>(tiles);
  VectorXd b(rows + 1);
  b.head(rows) = alpha_full;
  b(rows) = 1.0;
  VectorXd c = VectorXd::Zero(tiles + 1);
  c(tiles) = 1.0;
  const auto lp = detail::maximize(a, b, c);
  if (lp.status != detail::LpSolution::Status::optimal)
    return Feasibility::infeasible;
  return lp.value > tol ? Feasibility::strictly_feasible : Feasibility::boundary;
}

double gauge_objective(const TileFamily& family, const VectorXd& alpha_full,
                       const VectorXd& log_x) {
  return softmax(family, log_x).log_partition - alpha_full.dot(log_x);
}

VectorXd gauge_gradient(const TileFamily& family, const VectorXd& alpha_full,
                        const VectorXd& log_x) {
  return family.exponents * softmax(family, log_x).probabilities - alpha_full;
}

MatrixXd gauge_hessian(const TileFamily& family, const VectorXd& log_x) {
  const VectorXd q = softmax(family, log_x).probabilities;
  const VectorXd m = family.exponents * q;
  return family.exponents * q.asDiagonal() * family.exponents.transpose() -
         m * m.transpose();
}

MatrixXd gauge_null_space(const MatrixXd& exponents, double rel_tol) {
  MatrixXd centered = exponents.transpose();
  centered.rowwise() -= centered.colwise().mean();
  Eigen::JacobiSVD<MatrixXd> svd(centered, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const double cutoff = rel_tol * (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(exponents.rows() - rank);
}

CriticalGauge solve_critical_gauge(const TileFamily& family,
                                   const VectorXd& alpha_full,
                                   const GaugeOptions& opts) {
  const Eigen::Index dim = family.exponents.rows();
  if (alpha_full.size() != dim)
    throw InvalidArgument("density vector length does not match family");
  const MatrixXd null_basis = gauge_null_space(family.exponents);
  const MatrixXd null_projector = null_basis * null_basis.transpose();

  VectorXd y = opts.initial_log_x.value_or(VectorXd::Zero(dim));
  if (y.size() != dim) throw InvalidArgument("initial point has wrong length");

  CriticalGauge out;
  int iteration = 0;
  for (;; ++iteration) {
    const VectorXd g = gauge_gradient(family, alpha_full, y);
    if (g.lpNorm<Eigen::Infinity>() <= opts.tol) break;
    if (iteration >= opts.max_iterations)
      throw NoConvergence("critical gauge: no convergence after " +
                          std::to_string(opts.max_iterations) +
                          " Newton steps (residual " +
                          std::to_string(g.lpNorm<Eigen::Infinity>()) + ")");
    const MatrixXd h = gauge_hessian(family, y) + null_projector;
    VectorXd d = -h.ldlt().solve(g);
    d -= null_projector * d;

    const double f0 = gauge_objective(family, alpha_full, y);
    const double slope = g.dot(d);
    double step = 1.0;
    VectorXd trial = y + d;
    while (gauge_objective(family, alpha_full, trial) >
           f0 + 1e-4 * step * slope + 1e-14 * (1.0 + std::abs(f0))) {
      step *= 0.5;
      if (step < 1e-12)
        throw NoConvergence("critical gauge: line search failed");
      trial = y + step * d;
    }
    y = trial;
  }

  const double sigma_raw = gauge_objective(family, alpha_full, y);
  const double degree = static_cast<double>(family.degree());
  y.array() -= softmax(family, y).log_partition / degree;
  const Softmax s = softmax(family, y);
  out.sigma = s.log_partition - alpha_full.dot(y);
  if (std::abs(out.sigma - sigma_raw) > 1e-9 * (1.0 + std::abs(sigma_raw)))
    throw std::logic_error("growth rate changed under rescaling");
  out.x = y.array().exp();
  out.critical_weights = s.probabilities;
  out.residual = family.exponents * s.probabilities - alpha_full;
  out.iterations = iteration;
  return out;
}

CriticalGauge solve_critical_gauge(const std::vector<HomogenizedTile>& tiles,
                                   std::span<const double> weights,
                                   const DensityVector& alpha,
                                   const GaugeOptions& opts) {
  const TileFamily family = make_family(tiles, weights, alpha.vertex_count());
  const Feasibility f = check_feasible(family.exponents, alpha.full());
  if (f != Feasibility::strictly_feasible)
    throw NotFeasible(std::string("density vector is ") + to_string(f));
  return solve_critical_gauge(family, alpha.full(), opts);
}

double growth_rate(const TileFamily& family, const VectorXd& x,
                   const VectorXd& alpha_full) {
  const VectorXd log_x = x.array().log();
  return softmax(family, log_x).log_partition - alpha_full.dot(log_x);
}

}  // namespace multiweb
