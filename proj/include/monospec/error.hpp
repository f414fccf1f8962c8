#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace monospec {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  DivisionByZero,
  ConductorMismatch,
  CapExceeded,
  NotMonomial,
  NotAbelian,
  NotIndecomposable,
  NontrivialDiagonal,
  NotPermutationGroup,
  NotInJn,
  ScalarD,
  EvenN,
  ZeroPolynomial,
  NotCommuting,
  NotInvolution,
  ScalarJ,
  NotBlockMonomial,
  BlockSetMismatch,
  NoComplement,
  EvenQuotient,
  NotDivisible,
  SplitImpossible,
  AssertionFailure,
};

std::string_view to_string(ErrorCode code);

/// Library error carrying a machine-readable code and optional witness data.
/// The detail payload uses the same JSON grammar as the file formats so the
/// CLI can forward it unchanged.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

}  // namespace monospec
