#pragma once

#include <stdexcept>
#include <string>

namespace kacforge {

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable name used by reports and the CLI.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define KACFORGE_DEFINE_ERROR(Name)                                            \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name, what) {}             \
  };

KACFORGE_DEFINE_ERROR(ValidationError)
KACFORGE_DEFINE_ERROR(ParseError)
KACFORGE_DEFINE_ERROR(SizeBound)
KACFORGE_DEFINE_ERROR(NotAnAction)
KACFORGE_DEFINE_ERROR(SeedDegenerate)
KACFORGE_DEFINE_ERROR(ExtractionFailed)
KACFORGE_DEFINE_ERROR(NotMatched)
KACFORGE_DEFINE_ERROR(NotCrossedHom)
KACFORGE_DEFINE_ERROR(AxiomViolation)
KACFORGE_DEFINE_ERROR(NotAMorphism)
KACFORGE_DEFINE_ERROR(NonIntegral)
KACFORGE_DEFINE_ERROR(PeterWeylMismatch)
KACFORGE_DEFINE_ERROR(ActionNotCompatible)
KACFORGE_DEFINE_ERROR(OrbitInfinite)
KACFORGE_DEFINE_ERROR(TruncationOverflow)
KACFORGE_DEFINE_ERROR(IdentityViolated)
KACFORGE_DEFINE_ERROR(DomainError)

#undef KACFORGE_DEFINE_ERROR

} // namespace kacforge
