#include "multiweb/laplacian.hpp"

#include "multiweb/errors.hpp"

namespace multiweb {

exact::RationalMatrix exact_covariance_per_color(
    const MatrixXd& incidence, const std::vector<Rational>& weights) {
  using exact::RationalMatrix;
  if (static_cast<Eigen::Index>(weights.size()) != incidence.cols())
    throw InvalidArgument("one weight per tile required");
  const RationalMatrix d = RationalMatrix::from_eigen(incidence);
  const RationalMatrix dc = exact::scale_columns(d, weights);
  const RationalMatrix g = exact::inverse_on_image(dc * d.transpose());
  RationalMatrix c(weights.size(), weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) c(i, i) = weights[i];
  return c - dc.transpose() * g * dc;
}

}  // namespace multiweb
