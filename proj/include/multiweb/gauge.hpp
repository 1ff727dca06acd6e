#ifndef MULTIWEB_GAUGE_HPP
#define MULTIWEB_GAUGE_HPP

#include <optional>
#include <span>
#include <vector>

#include "multiweb/tiles.hpp"
#include "multiweb/types.hpp"

namespace multiweb {

/// Log-linear family P(x) = sum_k exp(log_weights_k) prod_v x_v^{E_vk}.
/// Columns of `exponents` are homogenized multiplicity vectors (rows
/// v_0..v_V), so every column sums to the same degree.
struct TileFamily {
  MatrixXd exponents;
  VectorXd log_weights;

  int degree() const {
    return exponents.cols() == 0 ? 0
                                 : static_cast<int>(exponents.col(0).sum());
  }
};

TileFamily make_family(const std::vector<HomogenizedTile>& tiles,
                       std::span<const double> weights, int vertex_count);

/// Target vertex densities alpha_1..alpha_V together with the implied
/// alpha_0 = V - sum alpha_v of the zero vertex.
class DensityVector {
 public:
  /// Throws InvalidArgument unless every alpha_v > 0 and alpha_0 > 0.
  static DensityVector from_vertices(const VectorXd& vertex_densities);
  static DensityVector uniform(int vertex_count, double alpha);

  /// (alpha_0, alpha_1, ..., alpha_V).
  const VectorXd& full() const { return full_; }
  double zero() const { return full_(0); }
  int vertex_count() const { return static_cast<int>(full_.size()) - 1; }

 private:
  VectorXd full_;
};

enum class Feasibility { strictly_feasible, boundary, infeasible };

const char* to_string(Feasibility f);

/// Decides whether alpha = D p for a tile distribution p with p_t > 0
/// (strictly feasible), only p_t >= 0 (boundary), or not at all, by
/// maximizing min_t p_t with a linear program.
Feasibility check_feasible(const MatrixXd& incidence, const VectorXd& alpha_full,
                           double tol = 1e-9);

struct GaugeOptions {
  double tol = 1e-12;
  int max_iterations = 200;
  /// Starting point in log coordinates; zero when absent.
  std::optional<VectorXd> initial_log_x;
};

/// Critical solution normalized to P(x) = 1.
struct CriticalGauge {
  VectorXd x;                 // x_0..x_V
  VectorXd critical_weights;  // w'(t), sums to one
  double sigma = 0.0;
  VectorXd residual;          // D w' - alpha
  int iterations = 0;
};

/// F(y) = log P(e^y) - <alpha, y>. Convex; its gradient is the residual of
/// the criticality equations and its minimum value is the growth rate.
double gauge_objective(const TileFamily& family, const VectorXd& alpha_full,
                       const VectorXd& log_x);
VectorXd gauge_gradient(const TileFamily& family, const VectorXd& alpha_full,
                        const VectorXd& log_x);
MatrixXd gauge_hessian(const TileFamily& family, const VectorXd& log_x);

/// Orthonormal basis of directions z with E^T z constant over tiles: the
/// global rescaling plus gauge transformations that leave weights unchanged.
MatrixXd gauge_null_space(const MatrixXd& exponents, double rel_tol = 1e-10);

/// Damped Newton on F in log coordinates with the null directions projected
/// out. Throws NoConvergence after opts.max_iterations.
CriticalGauge solve_critical_gauge(const TileFamily& family,
                                   const VectorXd& alpha_full,
                                   const GaugeOptions& opts = {});

/// Same as above after checking strict feasibility (NotFeasible otherwise).
CriticalGauge solve_critical_gauge(const std::vector<HomogenizedTile>& tiles,
                                   std::span<const double> weights,
                                   const DensityVector& alpha,
                                   const GaugeOptions& opts = {});

/// sigma = log P(x) - sum_v alpha_v log x_v for any critical solution x.
double growth_rate(const TileFamily& family, const VectorXd& x,
                   const VectorXd& alpha_full);

}  // namespace multiweb

#endif  // MULTIWEB_GAUGE_HPP
