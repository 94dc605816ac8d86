#pragma once

#include <stdexcept>
#include <string>

namespace tspace {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration (of a T- or TT-carrier, or of a candidate set) would exceed
/// the configured budget.  Raised instead of silently truncating.
struct BudgetExceeded : Error {
  using Error::Error;
};

/// Two values built over different monads were combined.
struct IncompatibleMonads : Error {
  using Error::Error;
};

/// An operation specific to one monad kind was applied to another.
struct WrongMonad : Error {
  using Error::Error;
};

/// A space does not satisfy condition (A), so no algebra structure exists.
struct NotAlgebraic : Error {
  using Error::Error;
};

/// A claimed Eilenberg-Moore algebra violates one of the two algebra laws.
struct LawViolation : Error {
  using Error::Error;
};

/// A monoid table is not associative, not unital, or not commutative.
struct InvalidMonoid : Error {
  using Error::Error;
};

/// The mate p# of a generator map is not surjective.
struct NotGenerating : Error {
  using Error::Error;
};

/// A serialized element does not decode over its carrier.
struct EncodingError : Error {
  using Error::Error;
};

/// A space file does not match the schema.
struct ParseError : Error {
  using Error::Error;
};

/// A documented caller contract was violated.
struct PreconditionError : Error {
  using Error::Error;
};

/// A property the construction guarantees failed to hold; reported rather
/// than silently repaired.
struct InternalInvariantViolated : Error {
  using Error::Error;
};

}  // namespace tspace
