#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gclab {

using i64 = std::int64_t;

// Structural failure: input data does not satisfy the axioms it claims to.
// Carries a machine-readable code plus witness indices naming the first
// violation found (scan order is always lexicographic, so witnesses are
// deterministic).
class ValidationError : public std::runtime_error {
 public:
  enum class Code {
    InvalidInput,
    NotAssociative,
    NoIdentity,
    NoInverse,
    NotAutomorphism,
    NotCompatible,
    NotHomomorphism,
    ModuleMismatch,
    ShapeMismatch,
    NotSurjective,
    CoefficientMismatch,
    NotASection,
    BadComposability,
    BadIdentity,
    BadInverse,
    NotAnAction,
    NotFunctorial,
    NotSurjectiveOnObjects,
    NotFullyFaithful,
    CompositionIncoherent,
    NotHomogeneous,
    NotPrincipal,
    AnchorMismatch,
    QuotientIllDefined,
    IncompatibleBases,
    NotAbelian,
    NotConnected,
    NotBounded,
    NotEquivariant,
    HypothesisFailed,
    NonUniqueAutomorphismValue,
    NotPrime,
    Reducible,
    BadCongruence,
  };

  ValidationError(Code code, std::vector<i64> witness, const std::string& msg);

  Code code() const { return code_; }
  const std::vector<i64>& witness() const { return witness_; }
  static const char* code_name(Code code);

 private:
  Code code_;
  std::vector<i64> witness_;
};

// A well-formed computation whose mathematical answer is "no" and where the
// API shape is exceptional rather than a verdict value (a table fails the
// cocycle identity, a lift is not projectively multiplicative, an action has
// a fixed point, an extension has no multiplicative section).
class NegativeResult : public std::runtime_error {
 public:
  enum class Kind { NotACocycle, NotScalar, NotFree, NotSplit };

  NegativeResult(Kind kind, std::vector<i64> witness, const std::string& msg);

  Kind kind() const { return kind_; }
  const std::vector<i64>& witness() const { return witness_; }
  static const char* kind_name(Kind kind);

 private:
  Kind kind_;
  std::vector<i64> witness_;
};

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] void fail(ValidationError::Code code, std::vector<i64> witness,
                       const std::string& msg);
[[noreturn]] void negative(NegativeResult::Kind kind, std::vector<i64> witness,
                           const std::string& msg);

}  // namespace gclab
