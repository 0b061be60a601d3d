#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freeconv {

enum class ErrorCode {
  // series
  DivisionByZeroConstant,
  NonzeroInnerConstant,
  ZeroLinearCoefficient,
  NonpositiveConstant,
  DoubleHalfPower,
  OrderMismatch,
  // combinatorics / measures / catalog
  InvalidParams,
  UnsupportedOrder,
  InsufficientOrder,
  NegativeSupport,
  NoClosedForm,
  NoDensity,
  // transforms / freeconv
  ZeroFirstMoment,
  EvaluationFailure,
  InvalidExponent,
  AsymmetricInput,
  NegativeScale,
  NotFreeRegular,
  // classify
  TooShort,
  // rmt
  InvalidDimension,
  ModelUnavailable,
  // io
  SpecValidation,
};

std::string_view error_name(ErrorCode code);

/// True for errors caused by the caller's input rather than by a failed computation.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freeconv
