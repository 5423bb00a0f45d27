#pragma once

#include <stdexcept>
#include <string>

namespace joindeg {

// Error codes mirror the per-operation error contracts. Every throw site
// names one of these so the CLI can put a stable code into reports.
enum class Err {
  DivisionByZero,
  MixedFields,
  ExhaustedField,
  NotPrime,
  ArityMismatch,
  BothZero,
  ZeroPolynomial,
  BothConstant,
  SingularMatrix,
  DegreeCapExceeded,
  ParseError,
  NotZeroDimensional,
  ShearDisagreement,
  CoincidentPoints,
  AmbientMismatch,
  CenterPoint,
  BasePointFound,
  NonBirationalParam,
  DegenerateForms,
  SingularParameter,
  LineInsideVariety,
  PositiveDimensionalSection,
  CoincidentSample,
  GeneralPositionUncertain,
  TrialDisagreement,
  ChartFailure,
  JoinDefective,
  NonIntegralRatio,
  ZeroWeights,
  CheckFailure,
  FieldMismatch,
  EnumerationBudgetExceeded,
  NoJoinLineThroughZ,
  OracleInconclusive,
  InvalidInstance,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }
  const char* code_name() const { return err_name(code_); }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace joindeg
