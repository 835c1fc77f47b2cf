#pragma once

#include <stdexcept>
#include <string>

namespace natext {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NATEXT_DEFINE_ERROR(Name)              \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(std::string const& what)     \
        : Error(#Name ": " + what) {}          \
  };

NATEXT_DEFINE_ERROR(ParseError)
NATEXT_DEFINE_ERROR(InvalidArgument)
NATEXT_DEFINE_ERROR(FamilyMismatch)
NATEXT_DEFINE_ERROR(NotDeclaredCommutative)
NATEXT_DEFINE_ERROR(EqualityUnknown)
NATEXT_DEFINE_ERROR(MorphismInconsistent)
NATEXT_DEFINE_ERROR(EtaCollision)
NATEXT_DEFINE_ERROR(NoRelatorList)
NATEXT_DEFINE_ERROR(MembershipUndecidable)
NATEXT_DEFINE_ERROR(NotSingleGenerator)
NATEXT_DEFINE_ERROR(NotAmenableFamily)
NATEXT_DEFINE_ERROR(UnknownExample)

#undef NATEXT_DEFINE_ERROR

}  // namespace natext
