#ifndef MULTIWEB_TYPES_HPP
#define MULTIWEB_TYPES_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace multiweb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

/// Lossy conversion of an exact value to a floating type.
template <typename Scalar, typename Exact>
Scalar to_floating(const Exact& value) {
  return static_cast<Scalar>(value);
}

}  // namespace multiweb

#endif  // MULTIWEB_TYPES_HPP
