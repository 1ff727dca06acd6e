#ifndef MULTIWEB_LAPLACIAN_HPP
#define MULTIWEB_LAPLACIAN_HPP

#include <algorithm>
#include <vector>

#include "multiweb/exact.hpp"
#include "multiweb/tiles.hpp"
#include "multiweb/types.hpp"

namespace multiweb {

/// Incidence matrix D with rows v_0..v_V and one column per tile,
/// D(v, t) = t_v. Every column sums to V.
template <typename Scalar = double>
Matrix<Scalar> incidence_matrix(const std::vector<HomogenizedTile>& tiles,
                                int vertex_count) {
  Matrix<Scalar> d = Matrix<Scalar>::Zero(vertex_count + 1, tiles.size());
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    d(0, t) = Scalar(tiles[t].zero_multiplicity);
    for (int v : tiles[t].tile.vertices) d(v, t) = Scalar(1);
  }
  return d;
}

/// Tiling Laplacian D C D^T for the diagonal weight matrix C = diag(c).
template <typename DerivedD, typename DerivedC>
Matrix<typename DerivedD::Scalar> build_laplacian(
    const Eigen::MatrixBase<DerivedD>& d,
    const Eigen::MatrixBase<DerivedC>& c) {
  return d * c.asDiagonal() * d.transpose();
}

/// Inverse of a symmetric PSD matrix on the span of its eigenvectors with
/// eigenvalue above rel_eps * lambda_max; zero on the rest. For an
/// invertible Laplacian this is the ordinary inverse.
template <typename Derived>
Matrix<typename Derived::Scalar> pseudo_inverse_on_image(
    const Eigen::MatrixBase<Derived>& delta,
    typename Derived::Scalar rel_eps = typename Derived::Scalar(1e-10)) {
  using Scalar = typename Derived::Scalar;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(delta.eval());
  const Vector<Scalar>& lambda = eig.eigenvalues();
  const Scalar top = lambda.size() ? lambda.cwiseAbs().maxCoeff() : Scalar(0);
  Vector<Scalar> inv = Vector<Scalar>::Zero(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) > rel_eps * top) inv(i) = Scalar(1) / lambda(i);
  return eig.eigenvectors() * inv.asDiagonal() *
         eig.eigenvectors().transpose();
}

/// Gaussian approximation of the tile-count vector X.
template <typename Scalar>
struct GaussianLaw {
  Vector<Scalar> mean;
  Matrix<Scalar> covariance;
  Scalar scale = Scalar(0);  // N
};

/// mean = N c, Cov = N C (I - D^T Delta^+ D C) with Delta = D C D^T.
template <typename DerivedD, typename DerivedC>
GaussianLaw<typename DerivedD::Scalar> gaussian_law(
    const Eigen::MatrixBase<DerivedD>& d, const Eigen::MatrixBase<DerivedC>& c,
    typename DerivedD::Scalar colors) {
  using Scalar = typename DerivedD::Scalar;
  const Matrix<Scalar> dc = d * c.asDiagonal();
  const Matrix<Scalar> inv = pseudo_inverse_on_image(build_laplacian(d, c));
  Matrix<Scalar> cov = Matrix<Scalar>(c.asDiagonal()) -
                       dc.transpose() * inv * dc;
  cov = Scalar(0.5) * (cov + cov.transpose()).eval();
  GaussianLaw<Scalar> law;
  law.mean = colors * c;
  law.covariance = colors * cov;
  law.scale = colors;
  return law;
}

/// Structural checks of a GaussianLaw against its incidence matrix.
template <typename Scalar>
struct LawDiagnostics {
  Scalar asymmetry;           // max |Cov - Cov^T|
  Scalar incidence_residual;  // max |D Cov|
  Scalar row_sum_residual;    // max |Cov 1|
  Scalar min_eigenvalue;
  Scalar trace;
  Eigen::Index rank;          // eigenvalues above 1e-9 * trace
};

template <typename Scalar, typename DerivedD>
LawDiagnostics<Scalar> diagnose(const GaussianLaw<Scalar>& law,
                                const Eigen::MatrixBase<DerivedD>& d) {
  const Matrix<Scalar>& cov = law.covariance;
  LawDiagnostics<Scalar> out;
  out.asymmetry = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  out.incidence_residual = (d * cov).cwiseAbs().maxCoeff();
  out.row_sum_residual = (cov.rowwise().sum()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(cov, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  out.trace = cov.trace();
  const Scalar cutoff = Scalar(1e-9) * std::max(out.trace, Scalar(1e-300));
  out.rank = (eig.eigenvalues().array() > cutoff).count();
  return out;
}

/// Exact per-colour covariance C (I - D^T G D C) for an integer incidence
/// matrix and rational weights, with G the exact inverse of D C D^T on its
/// image.
exact::RationalMatrix exact_covariance_per_color(
    const MatrixXd& incidence, const std::vector<Rational>& weights);

}  // namespace multiweb

#endif  // MULTIWEB_LAPLACIAN_HPP
