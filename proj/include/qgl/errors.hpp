#pragma once
#include <stdexcept>
#include <string>

namespace qgl {

// Error taxonomy for the toolkit. Everything derives from Error so callers can
// catch coarsely; the CLI maps these onto exit codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// Bad argument: mismatched alphabets, non-dominant weight, unknown generator, ...
struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error(m) {}
};

// Specialization of a QScalar at a zero of its (reduced) denominator.
struct PoleError : Error {
  explicit PoleError(const std::string& m) : Error(m) {}
};

// Rewriting exceeded its step budget (diverging reduction is a bug; this is the guard).
struct FuelError : Error {
  explicit FuelError(const std::string& m) : Error(m) {}
};

// orient_and_complete could not certify local confluence within the degree cap.
struct CompletionError : Error {
  explicit CompletionError(const std::string& m, std::string offending = {})
      : Error(m), overlap(std::move(offending)) {}
  // Human-readable offending overlap word, when one is known.
  std::string overlap;
};

// An identity the theory guarantees failed to hold (would falsify the source material).
struct InconsistencyError : Error {
  explicit InconsistencyError(const std::string& m) : Error(m) {}
};

// No pairing/antipode convention candidate satisfied its pinning identity.
struct ConventionError : Error {
  explicit ConventionError(const std::string& m) : Error(m) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& m) : Error(m) {}
};

} // namespace qgl
