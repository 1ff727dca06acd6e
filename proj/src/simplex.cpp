#include "multiweb/simplex.hpp"

#include <vector>

#include "multiweb/errors.hpp"

namespace multiweb::detail {

namespace {

class Tableau {
 public:
  Tableau(MatrixXd t, std::vector<int> basis, double tol)
      : t_(std::move(t)), basis_(std::move(basis)), tol_(tol) {}

  MatrixXd& table() { return t_; }
  std::vector<int>& basis() { return basis_; }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index rhs() const { return t_.cols() - 1; }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    basis_[row] = static_cast<int>(col);
  }

  // Returns false when unbounded.
  bool optimize(Eigen::Index allowed_columns) {
    const Eigen::Index m = rows();
    for (int iteration = 0; iteration < 100000; ++iteration) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_columns; ++j)
        if (t_(m, j) < -tol_) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (t_(i, enter) <= tol_) continue;
        const double ratio = t_(i, rhs()) / t_(i, enter);
        if (leave < 0 || ratio < best - tol_ ||
            (ratio <= best + tol_ && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw NoConvergence("simplex iteration limit reached");
  }

 private:
  MatrixXd t_;
  std::vector<int> basis_;
  double tol_;
};

}  // namespace

LpSolution maximize(const MatrixXd& a, const VectorXd& b, const VectorXd& c,
                    double tol) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n)
    throw InvalidArgument("LP dimension mismatch");

  MatrixXd t = MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<int> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sign * b(i);
    basis[i] = static_cast<int>(n + i);
  }
  // Phase 1: maximize -sum(artificials).
  for (Eigen::Index j = 0; j < n; ++j) t(m, j) = -t.col(j).head(m).sum();
  t(m, n + m) = -t.col(n + m).head(m).sum();

  Tableau tab(std::move(t), std::move(basis), tol);
  tab.optimize(n + m);
  LpSolution out;
  const double scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (-tab.table()(m, n + m) > 1e3 * tol * scale) {
    out.status = LpSolution::Status::infeasible;
    return out;
  }

  // Drive artificials out of the basis; rows where that is impossible are
  // redundant and dropped.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) {
      keep.push_back(i);
      continue;
    }
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(tab.table()(i, j)) > tol) {
        col = j;
        break;
      }
    if (col >= 0) {
      tab.pivot(i, col);
      keep.push_back(i);
    }
  }
  const Eigen::Index r = static_cast<Eigen::Index>(keep.size());
  MatrixXd t2 = MatrixXd::Zero(r + 1, n + 1);
  std::vector<int> basis2(r);
  for (Eigen::Index k = 0; k < r; ++k) {
    t2.row(k).head(n) = tab.table().row(keep[k]).head(n);
    t2(k, n) = tab.table()(keep[k], n + m);
    basis2[k] = tab.basis()[keep[k]];
  }
  // Phase 2 reduced costs: c_B^T B^{-1} A_j - c_j.
  for (Eigen::Index j = 0; j <= n; ++j) {
    double z = 0.0;
    for (Eigen::Index k = 0; k < r; ++k) z += c(basis2[k]) * t2(k, j);
    t2(r, j) = j < n ? z - c(j) : z;
  }
  Tableau phase2(std::move(t2), std::move(basis2), tol);
  if (!phase2.optimize(n)) {
    out.status = LpSolution::Status::unbounded;
    return out;
  }
  out.status = LpSolution::Status::optimal;
  out.x = VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < r; ++k)
    out.x(phase2.basis()[k]) = phase2.table()(k, n);
  out.value = c.dot(out.x);
  return out;
}

}  // namespace multiweb::detail
