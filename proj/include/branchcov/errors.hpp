#pragma once

#include <stdexcept>
#include <string>

namespace branchcov {

/// Base class of every error raised by the library. `kind()` is the stable
/// machine-readable name used in CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define BRANCHCOV_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

BRANCHCOV_DEFINE_ERROR(InvalidPermutation);
BRANCHCOV_DEFINE_ERROR(DegreeMismatch);
BRANCHCOV_DEFINE_ERROR(NotASurface);
BRANCHCOV_DEFINE_ERROR(InvalidData);
BRANCHCOV_DEFINE_ERROR(NotSimple);
BRANCHCOV_DEFINE_ERROR(NotConnected);
BRANCHCOV_DEFINE_ERROR(NonorientableBase);
BRANCHCOV_DEFINE_ERROR(WrongBase);
BRANCHCOV_DEFINE_ERROR(LimitExceeded);
BRANCHCOV_DEFINE_ERROR(InvalidInput);
BRANCHCOV_DEFINE_ERROR(NotNormalized);
BRANCHCOV_DEFINE_ERROR(NonorientableInput);
BRANCHCOV_DEFINE_ERROR(DepthExceeded);
BRANCHCOV_DEFINE_ERROR(UnverifiedInput);
BRANCHCOV_DEFINE_ERROR(ParseError);

#undef BRANCHCOV_DEFINE_ERROR

}  // namespace branchcov
