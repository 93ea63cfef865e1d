#pragma once

#include <stdexcept>
#include <string>

namespace liebv {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define LIEBV_ERROR(Name)                \
  struct Name : Error {                  \
    using Error::Error;                  \
  }

LIEBV_ERROR(ParseError);
LIEBV_ERROR(ContainmentError);
LIEBV_ERROR(NotSemisimpleError);
LIEBV_ERROR(PairingDegenerateError);
LIEBV_ERROR(NotClosedError);
LIEBV_ERROR(CoJacobiError);
LIEBV_ERROR(FrobeniusError);
LIEBV_ERROR(NonPointedConeError);
LIEBV_ERROR(InfeasibleBlockError);
LIEBV_ERROR(TruncationError);
LIEBV_ERROR(NotAModuleError);
LIEBV_ERROR(NotACocycleError);
LIEBV_ERROR(DegenerateFormError);
LIEBV_ERROR(UnsupportedShiftError);
LIEBV_ERROR(ValidationError);

#undef LIEBV_ERROR

}  // namespace liebv
