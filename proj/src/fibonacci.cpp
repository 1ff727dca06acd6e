#include "multiweb/fibonacci.hpp"

#include "multiweb/errors.hpp"

namespace multiweb {

BigInt fibonacci(int k) {
  if (k < -1) throw InvalidArgument("fibonacci index must be >= -1");
  if (k == -1) return 1;
  BigInt a = 0, b = 1;  // F_0, F_1
  for (int i = 0; i < k; ++i) {
    BigInt next = a + b;
    a = std::move(b);
    b = std::move(next);
  }
  return a;
}

BigInt lucas(int n) {
  if (n < 0) throw InvalidArgument("lucas index must be >= 0");
  if (n == 0) return 2;
  return fibonacci(n - 1) + fibonacci(n + 1);
}

}  // namespace multiweb
