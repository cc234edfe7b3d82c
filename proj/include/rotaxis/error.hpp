#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rotaxis {

enum class ErrorKind {
  IndexOutOfRange,
  NotOrthogonal,
  WrongDeterminant,
  DegenerateDenominator,
  IdentityInput,
  MethodInapplicable,
  NotDegenerate,
  InfeasibleParameters,
  RankDeficient,
  NotUnit,
  MinusOneEigenvalue,
  ParallelReflections,
  EigenvalueTooClose,
  ZeroDivisor,
  DegenerateDenominatorFp,
  ModulusTooLarge,
  NotPrime,
  NotOnCircle,
  NotUnitary,
  NotAnEigenvalue,
  ZeroVector,
  InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::WrongDeterminant: return "WrongDeterminant";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::IdentityInput: return "IdentityInput";
    case ErrorKind::MethodInapplicable: return "MethodInapplicable";
    case ErrorKind::NotDegenerate: return "NotDegenerate";
    case ErrorKind::InfeasibleParameters: return "InfeasibleParameters";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::MinusOneEigenvalue: return "MinusOneEigenvalue";
    case ErrorKind::ParallelReflections: return "ParallelReflections";
    case ErrorKind::EigenvalueTooClose: return "EigenvalueTooClose";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::DegenerateDenominatorFp: return "DegenerateDenominatorFp";
    case ErrorKind::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotOnCircle: return "NotOnCircle";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Short scientific rendering of a residual for diagnostics.
inline std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Off-diagonal index pair, 1-based as printed in diagnostics.
using IndexPair = std::pair<int, int>;

/// Single exception type for the library; `kind()` tells callers which
/// precondition failed. Some kinds carry a payload (the offending residual
/// for NotOrthogonal, the vanishing pairs for DegenerateDenominator).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value = 0.0,
        std::vector<IndexPair> pairs = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        value_(value),
        pairs_(std::move(pairs)) {}

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }

 private:
  ErrorKind kind_;
  double value_;
  std::vector<IndexPair> pairs_;
};

}  // namespace rotaxis
