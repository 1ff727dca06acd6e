#ifndef MULTIWEB_ERRORS_HPP
#define MULTIWEB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace multiweb {

/// Base class of every error raised by the library. `kind()` is a stable
/// identifier used by the command-line tool when it reports failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

#define MULTIWEB_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                        \
   public:                                                           \
    using Error::Error;                                              \
    const char* kind() const noexcept override { return #Name; }     \
  }

MULTIWEB_DEFINE_ERROR(InvalidArgument);
MULTIWEB_DEFINE_ERROR(InvalidEdge);
MULTIWEB_DEFINE_ERROR(ResourceLimit);
MULTIWEB_DEFINE_ERROR(InfeasibleMultiplicity);
MULTIWEB_DEFINE_ERROR(NotFeasible);
MULTIWEB_DEFINE_ERROR(NoConvergence);
MULTIWEB_DEFINE_ERROR(WindowWraps);
MULTIWEB_DEFINE_ERROR(InitFailure);

#undef MULTIWEB_DEFINE_ERROR

}  // namespace multiweb

#endif  // MULTIWEB_ERRORS_HPP
