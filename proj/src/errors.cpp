#include "inoue/errors.hpp"

namespace inoue {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotUnimodular: return "NotUnimodular";
    case Err::WrongEigenvaluePattern: return "WrongEigenvaluePattern";
    case Err::RootFindingFailure: return "RootFindingFailure";
    case Err::SingularBasis: return "SingularBasis";
    case Err::IntegerOverflow: return "IntegerOverflow";
    case Err::BranchUndefined: return "BranchUndefined";
    case Err::StepUnderflow: return "StepUnderflow";
    case Err::EmptyInput: return "EmptyInput";
    case Err::DomainError: return "DomainError";
    case Err::ZeroInput: return "ZeroInput";
    case Err::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace inoue
