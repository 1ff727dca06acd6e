#ifndef MULTIWEB_SIMPLEX_HPP
#define MULTIWEB_SIMPLEX_HPP

#include "multiweb/types.hpp"

namespace multiweb::detail {

struct LpSolution {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  double value = 0.0;
  VectorXd x;
};

/// maximize c^T x subject to A x = b, x >= 0.
/// Dense two-phase tableau simplex with Bland's rule; meant for the small
/// problems met in feasibility checks. Redundant equality rows are allowed.
LpSolution maximize(const MatrixXd& a, const VectorXd& b, const VectorXd& c,
                    double tol = 1e-10);

}  // namespace multiweb::detail

#endif  // MULTIWEB_SIMPLEX_HPP
