#ifndef DAGFIX_ERRORS_HPP
#define DAGFIX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dagfix {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Kleene iteration hit its iteration budget without stabilizing.
struct NonConvergence : Error {
  NonConvergence(const std::string& what, std::size_t iterations)
      : Error(what), iterations(iterations) {}
  std::size_t iterations;
};

struct DomainMismatch : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// Join of two partial injections whose union is not a partial injection.
struct IncompatibleJoin : Error {
  using Error::Error;
};

struct Unsupported : Error {
  using Error::Error;
};

struct TooLarge : Error {
  using Error::Error;
};

/// A value that violates the invariants of its morphism type.
struct InvalidMorphism : Error {
  using Error::Error;
};

/// Malformed morphism or functional document.
struct FormatError : Error {
  using Error::Error;
};

}  // namespace dagfix

#endif
