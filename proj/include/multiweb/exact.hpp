#ifndef MULTIWEB_EXACT_HPP
#define MULTIWEB_EXACT_HPP

#include <cstddef>
#include <vector>

#include "multiweb/types.hpp"

namespace multiweb::exact {

/// Small dense row-major matrix of rationals. Eigen cannot host
/// boost::multiprecision rationals here, so exact linear algebra lives in
/// this helper.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  template <typename Derived>
  static RationalMatrix from_eigen(const Eigen::MatrixBase<Derived>& m) {
    RationalMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RationalMatrix transpose() const;
  MatrixXd to_double() const;

  friend RationalMatrix operator*(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a,
                                  const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&,
                         const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Multiplies column j by c[j].
RationalMatrix scale_columns(const RationalMatrix& m,
                             const std::vector<Rational>& c);

/// Inverse of a nonsingular square matrix by Gauss-Jordan elimination.
RationalMatrix inverse(const RationalMatrix& m);

/// Indices of a maximal set of linearly independent columns.
std::vector<std::size_t> pivot_columns(const RationalMatrix& m);

/// For symmetric positive semidefinite S, returns G with S G y = y for every
/// y in Im(S) and G y in Im(S): G = Q (Q^T S Q)^{-1} Q^T with Q a column
/// basis of Im(S).
RationalMatrix inverse_on_image(const RationalMatrix& s);

}  // namespace multiweb::exact

#endif  // MULTIWEB_EXACT_HPP
