#ifndef MULTIWEB_POLYNOMIAL_HPP
#define MULTIWEB_POLYNOMIAL_HPP

#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "multiweb/errors.hpp"
#include "multiweb/tiles.hpp"

namespace multiweb {

/// Exponents of x_0, x_1, ..., x_V.
using ExponentVector = std::vector<int>;

/// Polynomial stored as a map from exponent vectors to nonzero
/// coefficients.
template <typename Scalar>
class SparsePolynomial {
 public:
  explicit SparsePolynomial(int variable_count = 0)
      : variable_count_(variable_count) {}

  int variable_count() const { return variable_count_; }
  std::size_t size() const { return terms_.size(); }
  const std::map<ExponentVector, Scalar>& terms() const { return terms_; }

  void add_term(const ExponentVector& exponents, const Scalar& coefficient) {
    if (static_cast<int>(exponents.size()) != variable_count_)
      throw InvalidArgument("exponent vector has wrong length");
    auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
    if (!inserted) it->second += coefficient;
    if (it->second == Scalar(0)) terms_.erase(it);
  }

  Scalar coefficient(const ExponentVector& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  template <typename Point>
  Scalar evaluate(const Point& x) const {
    Scalar sum(0);
    for (const auto& [e, c] : terms_) {
      Scalar term = c;
      for (int i = 0; i < variable_count_; ++i)
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      sum += term;
    }
    return sum;
  }

  bool is_homogeneous(int degree) const {
    for (const auto& [e, c] : terms_)
      if (std::accumulate(e.begin(), e.end(), 0) != degree) return false;
    return true;
  }

  friend bool operator==(const SparsePolynomial&,
                         const SparsePolynomial&) = default;

 private:
  int variable_count_ = 0;
  std::map<ExponentVector, Scalar> terms_;
};

/// Homogenized tiling polynomial sum_t w(t) prod_v x_v^{t_v} in the
/// variables x_0..x_V. Monomials of tiles sharing an exponent vector merge.
template <typename Scalar>
SparsePolynomial<Scalar> tiling_polynomial(
    const std::vector<HomogenizedTile>& tiles, std::span<const Scalar> weights,
    int vertex_count) {
  if (weights.size() != tiles.size())
    throw InvalidArgument("one weight per tile required");
  SparsePolynomial<Scalar> poly(vertex_count + 1);
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    if (!(weights[i] > Scalar(0)))
      throw InvalidArgument("tile weights must be strictly positive");
    ExponentVector e(vertex_count + 1, 0);
    for (int v = 0; v <= vertex_count; ++v) e[v] = tiles[i].multiplicity(v);
    poly.add_term(e, weights[i]);
  }
  if (!poly.is_homogeneous(vertex_count))
    throw std::logic_error("tiling polynomial is not homogeneous");
  return poly;
}

/// Identifies the variables inside each group; group k becomes variable k
/// of the result. `groups` must partition 0..variable_count-1.
template <typename Scalar>
SparsePolynomial<Scalar> reduced_polynomial(
    const SparsePolynomial<Scalar>& poly,
    const std::vector<std::vector<int>>& groups) {
  const int n = poly.variable_count();
  std::vector<int> group_of(n, -1);
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (int v : groups[g]) {
      if (v < 0 || v >= n || group_of[v] != -1)
        throw InvalidArgument("groups must partition the variables");
      group_of[v] = static_cast<int>(g);
    }
  for (int g : group_of)
    if (g == -1) throw InvalidArgument("groups must partition the variables");

  SparsePolynomial<Scalar> out(static_cast<int>(groups.size()));
  for (const auto& [e, c] : poly.terms()) {
    ExponentVector reduced(groups.size(), 0);
    for (int v = 0; v < n; ++v) reduced[group_of[v]] += e[v];
    out.add_term(reduced, c);
  }
  return out;
}

}  // namespace multiweb

#endif  // MULTIWEB_POLYNOMIAL_HPP
