#pragma once

#include <stdexcept>
#include <string>

namespace maxvar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MAXVAR_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

MAXVAR_DEFINE_ERROR(NegativeValue);
MAXVAR_DEFINE_ERROR(ParseError);
MAXVAR_DEFINE_ERROR(EmptyInterval);
MAXVAR_DEFINE_ERROR(NegativeRadius);
MAXVAR_DEFINE_ERROR(ZeroFunction);
MAXVAR_DEFINE_ERROR(TailCertificateFailed);
MAXVAR_DEFINE_ERROR(OmegaNotAttained);
MAXVAR_DEFINE_ERROR(MissingInteriorPoint);
MAXVAR_DEFINE_ERROR(PreconditionViolated);
MAXVAR_DEFINE_ERROR(CapExceeded);

#undef MAXVAR_DEFINE_ERROR

}  // namespace maxvar
