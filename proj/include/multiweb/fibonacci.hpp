#ifndef MULTIWEB_FIBONACCI_HPP
#define MULTIWEB_FIBONACCI_HPP

#include "multiweb/types.hpp"

namespace multiweb {

/// F_k with F_1 = F_2 = 1, extended by F_0 = 0 and F_{-1} = 1.
/// Requires k >= -1.
BigInt fibonacci(int k);

/// Lucas number phi^n + psi^n (L_0 = 2, L_1 = 1, L_2 = 3).
BigInt lucas(int n);

}  // namespace multiweb

#endif  // MULTIWEB_FIBONACCI_HPP
