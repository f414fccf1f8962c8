#include "monospec/error.hpp"

namespace monospec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ConductorMismatch: return "ConductorMismatch";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotMonomial: return "NotMonomial";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::NotIndecomposable: return "NotIndecomposable";
    case ErrorCode::NontrivialDiagonal: return "NontrivialDiagonal";
    case ErrorCode::NotPermutationGroup: return "NotPermutationGroup";
    case ErrorCode::NotInJn: return "NotInJn";
    case ErrorCode::ScalarD: return "ScalarD";
    case ErrorCode::EvenN: return "EvenN";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::ScalarJ: return "ScalarJ";
    case ErrorCode::NotBlockMonomial: return "NotBlockMonomial";
    case ErrorCode::BlockSetMismatch: return "BlockSetMismatch";
    case ErrorCode::NoComplement: return "NoComplement";
    case ErrorCode::EvenQuotient: return "EvenQuotient";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::SplitImpossible: return "SplitImpossible";
    case ErrorCode::AssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

}  // namespace monospec
