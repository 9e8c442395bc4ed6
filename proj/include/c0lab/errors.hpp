#pragma once

#include <stdexcept>
#include <string>

namespace c0lab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define C0LAB_DEFINE_ERROR(Name)                                               \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

C0LAB_DEFINE_ERROR(InvalidInnerFunction);
C0LAB_DEFINE_ERROR(NotADivisor);
C0LAB_DEFINE_ERROR(OutsideDisc);
C0LAB_DEFINE_ERROR(DegenerateGram);
C0LAB_DEFINE_ERROR(SingularResolvent);
C0LAB_DEFINE_ERROR(AmbientMismatch);
C0LAB_DEFINE_ERROR(NotInvariant);
C0LAB_DEFINE_ERROR(NotAnnihilated);
C0LAB_DEFINE_ERROR(IllConditioned);
C0LAB_DEFINE_ERROR(ModelTooLong);
C0LAB_DEFINE_ERROR(HypothesisViolated);
C0LAB_DEFINE_ERROR(NotInSubspace);
C0LAB_DEFINE_ERROR(DivisibilityFailure);
C0LAB_DEFINE_ERROR(TruncationTooSmall);
C0LAB_DEFINE_ERROR(PreconditionViolated);
C0LAB_DEFINE_ERROR(ParseError);

#undef C0LAB_DEFINE_ERROR

} // namespace c0lab
