#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orthodual {

enum class ErrorCode {
  InvalidArgument,
  EndpointOutOfRange,
  SelfLoop,
  DuplicateEdge,
  CapacityExceeded,
  DimensionMismatch,
  SpaceMismatch,
  KappaBorderWeight,   // p_0 = p_hat_0 = 1/nu violated
  KappaBorderOnes,   // border of U is not all ones
  KappaGramIdentity,   // nu P U P_hat U^T != I
  NotProbability,
  DegenerateKappa,
  RouteDisagreement,
  UnitarityDefect,
  NonConstantShift,
  WindowExhausted,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orthodual
