#pragma once

#include <stdexcept>
#include <string>

namespace gl3trace {

// Every failure mode the library reports deliberately.  The CLI maps these to
// exit codes: configuration problems -> 3, budget refusals -> 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotPrimeError : Error {
  explicit NotPrimeError(const std::string& w) : Error(w) {}
};
struct ReduciblePolynomialError : Error {
  explicit ReduciblePolynomialError(const std::string& w) : Error(w) {}
};
struct NotCongruent1Mod3Error : Error {
  explicit NotCongruent1Mod3Error(const std::string& w) : Error(w) {}
};
struct LevelMismatchError : Error {
  explicit LevelMismatchError(const std::string& w) : Error(w) {}
};
struct NotASubgroupError : Error {
  explicit NotASubgroupError(const std::string& w) : Error(w) {}
};
struct UnknownConditionError : Error {
  explicit UnknownConditionError(const std::string& w) : Error(w) {}
};
struct SingularError : Error {
  explicit SingularError(const std::string& w) : Error(w) {}
};
struct SingularKappaError : Error {
  explicit SingularKappaError(const std::string& w) : Error(w) {}
};
struct BudgetExceededError : Error {
  explicit BudgetExceededError(const std::string& w) : Error(w) {}
};
struct DenominatorZeroError : Error {
  explicit DenominatorZeroError(const std::string& w) : Error(w) {}
};
struct UnsupportedKindError : Error {
  explicit UnsupportedKindError(const std::string& w) : Error(w) {}
};
struct WrongBranchError : Error {
  explicit WrongBranchError(const std::string& w) : Error(w) {}
};
struct UnsupportedRegimeError : Error {
  explicit UnsupportedRegimeError(const std::string& w) : Error(w) {}
};

}  // namespace gl3trace
