#ifndef MULTIWEB_VERIFY_HPP
#define MULTIWEB_VERIFY_HPP

#include <string>
#include <vector>

namespace multiweb {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Cross-checks closed forms against brute-force and numerical oracles.
/// `quick` shrinks the parameter ranges.
std::vector<CheckResult> run_verification(bool quick);

}  // namespace multiweb

#endif  // MULTIWEB_VERIFY_HPP
