#pragma once

#include <stdexcept>
#include <string>

namespace realform {

enum class ErrorCode {
  InvalidInput,
  RepeatedEigenvalues,
  NonDiagonalizable,
  IncompatibleEigenvalues,
  DegenerateFrame,
  NoConjugation,
  UnderdeterminedConjugation,
  NumericalDegeneracy,
  GenericityViolation,
  SharedEigendirections,
  MethodNotApplicable,
  IndeterminateCrossRatio,
  DegenerateTriple,
  InfeasibleSpec,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}
  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace realform
