#pragma once

#include <stdexcept>
#include <string>

namespace nhcd {

/// Base class for every failure caused by the numerics (EP proximity,
/// branch ambiguity, integrator guards). The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class AtExceptionalPoint : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class AmbiguousBranch : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegenerateRatio : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class HyperbolicSingularity : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class StepTooLarge : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NonFiniteState : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegenerateGap : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NotADensityMatrix : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Errors tied to a specific time along a schedule.
class PathError : public NumericalError {
public:
  PathError(const std::string& what, double time)
      : NumericalError(what + " (t = " + std::to_string(time) + " us)"), time_(time) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

class PathTooCloseToEP : public PathError {
public:
  using PathError::PathError;
};

class SamplingTooCoarse : public PathError {
public:
  using PathError::PathError;
};

/// Invalid configuration; `field()` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

}  // namespace nhcd
