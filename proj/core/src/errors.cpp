#include "gclab/errors.hpp"

namespace gclab {

namespace {

std::string with_witness(const std::string& msg, const char* tag,
                         const std::vector<i64>& w) {
  std::string s = std::string(tag) + ": " + msg;
  if (!w.empty()) {
    s += " [witness";
    for (i64 v : w) s += " " + std::to_string(v);
    s += "]";
  }
  return s;
}

}  // namespace

ValidationError::ValidationError(Code code, std::vector<i64> witness,
                                 const std::string& msg)
    : std::runtime_error(with_witness(msg, code_name(code), witness)),
      code_(code),
      witness_(std::move(witness)) {}

const char* ValidationError::code_name(Code code) {
  switch (code) {
    case Code::InvalidInput: return "InvalidInput";
    case Code::NotAssociative: return "NotAssociative";
    case Code::NoIdentity: return "NoIdentity";
    case Code::NoInverse: return "NoInverse";
    case Code::NotAutomorphism: return "NotAutomorphism";
    case Code::NotCompatible: return "NotCompatible";
    case Code::NotHomomorphism: return "NotHomomorphism";
    case Code::ModuleMismatch: return "ModuleMismatch";
    case Code::ShapeMismatch: return "ShapeMismatch";
    case Code::NotSurjective: return "NotSurjective";
    case Code::CoefficientMismatch: return "CoefficientMismatch";
    case Code::NotASection: return "NotASection";
    case Code::BadComposability: return "BadComposability";
    case Code::BadIdentity: return "BadIdentity";
    case Code::BadInverse: return "BadInverse";
    case Code::NotAnAction: return "NotAnAction";
    case Code::NotFunctorial: return "NotFunctorial";
    case Code::NotSurjectiveOnObjects: return "NotSurjectiveOnObjects";
    case Code::NotFullyFaithful: return "NotFullyFaithful";
    case Code::CompositionIncoherent: return "CompositionIncoherent";
    case Code::NotHomogeneous: return "NotHomogeneous";
    case Code::NotPrincipal: return "NotPrincipal";
    case Code::AnchorMismatch: return "AnchorMismatch";
    case Code::QuotientIllDefined: return "QuotientIllDefined";
    case Code::IncompatibleBases: return "IncompatibleBases";
    case Code::NotAbelian: return "NotAbelian";
    case Code::NotConnected: return "NotConnected";
    case Code::NotBounded: return "NotBounded";
    case Code::NotEquivariant: return "NotEquivariant";
    case Code::HypothesisFailed: return "HypothesisFailed";
    case Code::NonUniqueAutomorphismValue: return "NonUniqueAutomorphismValue";
    case Code::NotPrime: return "NotPrime";
    case Code::Reducible: return "Reducible";
    case Code::BadCongruence: return "BadCongruence";
  }
  return "Unknown";
}

NegativeResult::NegativeResult(Kind kind, std::vector<i64> witness,
                               const std::string& msg)
    : std::runtime_error(with_witness(msg, kind_name(kind), witness)),
      kind_(kind),
      witness_(std::move(witness)) {}

const char* NegativeResult::kind_name(Kind kind) {
  switch (kind) {
    case Kind::NotACocycle: return "NotACocycle";
    case Kind::NotScalar: return "NotScalar";
    case Kind::NotFree: return "NotFree";
    case Kind::NotSplit: return "NotSplit";
  }
  return "Unknown";
}

void fail(ValidationError::Code code, std::vector<i64> witness,
          const std::string& msg) {
  throw ValidationError(code, std::move(witness), msg);
}

void negative(NegativeResult::Kind kind, std::vector<i64> witness,
              const std::string& msg) {
  throw NegativeResult(kind, std::move(witness), msg);
}

}  // namespace gclab
