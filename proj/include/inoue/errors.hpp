#pragma once

#include <stdexcept>
#include <string>

namespace inoue {

enum class Err {
  NotUnimodular,
  WrongEigenvaluePattern,
  RootFindingFailure,
  SingularBasis,
  IntegerOverflow,
  BranchUndefined,
  StepUnderflow,
  EmptyInput,
  DomainError,
  ZeroInput,
  BadConfig,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace inoue
