#include "orthodual/error.hpp"

namespace orthodual {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::EndpointOutOfRange: return "edge endpoint out of range";
    case ErrorCode::SelfLoop: return "self-loop";
    case ErrorCode::DuplicateEdge: return "duplicate edge";
    case ErrorCode::CapacityExceeded: return "state space exceeds capacity";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::SpaceMismatch: return "configuration space mismatch";
    case ErrorCode::KappaBorderWeight: return "kappa border weight: p_0 = p_hat_0 = 1/nu";
    case ErrorCode::KappaBorderOnes: return "kappa border: U row and column 0 must be ones";
    case ErrorCode::KappaGramIdentity: return "kappa Gram identity: nu P U P_hat U^T = I";
    case ErrorCode::NotProbability: return "not a strictly positive probability vector";
    case ErrorCode::DegenerateKappa: return "degenerate kappa construction";
    case ErrorCode::RouteDisagreement: return "independent routes disagree";
    case ErrorCode::UnitarityDefect: return "unitarity defect above tolerance";
    case ErrorCode::NonConstantShift: return "difference is not a multiple of the identity";
    case ErrorCode::WindowExhausted: return "evaluation window exhausted";
    case ErrorCode::ParseError: return "parse error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace orthodual
