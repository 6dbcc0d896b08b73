#pragma once

#include <stdexcept>
#include <string>

namespace itx {

// Error families map onto the CLI exit codes: ConfigError -> 2,
// DataError -> 3, SolverError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};
struct DataError : Error {
  using Error::Error;
};
struct SolverError : Error {
  using Error::Error;
};

struct EmptyInput : DataError {
  EmptyInput(const std::string& what) : DataError("empty input: " + what) {}
};
struct DimensionMismatch : DataError {
  DimensionMismatch(const std::string& what) : DataError("dimension mismatch: " + what) {}
};
struct NonPositiveMass : DataError {
  NonPositiveMass(const std::string& what) : DataError("non-positive mass: " + what) {}
};
struct NonProbabilityMass : DataError {
  NonProbabilityMass(const std::string& what) : DataError("total mass must be 1: " + what) {}
};
struct InstanceTooLarge : DataError {
  InstanceTooLarge(const std::string& what) : DataError("instance too large: " + what) {}
};
struct ZeroRowMass : DataError {
  ZeroRowMass(const std::string& what) : DataError("coupling row has zero mass: " + what) {}
};
struct ShapeMismatch : DataError {
  ShapeMismatch(const std::string& what) : DataError("shape mismatch: " + what) {}
};
struct NonScalarLoss : DataError {
  NonScalarLoss(const std::string& what) : DataError("loss node is not scalar: " + what) {}
};
struct IoError : DataError {
  IoError(const std::string& what) : DataError("io error: " + what) {}
};

struct UnknownScene : ConfigError {
  UnknownScene(const std::string& what) : ConfigError("unknown scene: " + what) {}
};
struct BadParams : ConfigError {
  BadParams(const std::string& what) : ConfigError("bad parameters: " + what) {}
};

struct SolverNonConvergence : SolverError {
  SolverNonConvergence(const std::string& what) : SolverError("solver did not converge: " + what) {}
};
struct InfeasibleInstance : SolverError {
  InfeasibleInstance(const std::string& what) : SolverError("infeasible instance: " + what) {}
};
struct NonFiniteLoss : SolverError {
  NonFiniteLoss(const std::string& what) : SolverError("non-finite loss: " + what) {}
};
struct NonFiniteActivation : SolverError {
  NonFiniteActivation(const std::string& what) : SolverError("non-finite activation: " + what) {}
};

}  // namespace itx
