#pragma once

#include <stdexcept>
#include <string>

namespace optoconj {

// Base class for every error raised by the library. Each subclass maps to one
// failure mode of the simulator; the CLI translates them into exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string field, std::string bound);

  const std::string& field() const noexcept { return field_; }
  const std::string& bound() const noexcept { return bound_; }

 private:
  std::string field_;
  std::string bound_;
};

// |Omega1 - Omega2| <= kappa: the phase-conjugating drive frequencies do not exist.
class RegimeUnavailable : public Error {
 public:
  using Error::Error;
};

class DegenerateProduct : public Error {
 public:
  using Error::Error;
};

class SingularPoint : public Error {
 public:
  SingularPoint(const std::string& what, double location);
  double location() const noexcept { return location_; }

 private:
  double location_;
};

class GridMiss : public Error {
 public:
  GridMiss(double requested, double lo, double hi);
  double requested() const noexcept { return requested_; }

 private:
  double requested_;
};

class StepTooLarge : public Error {
 public:
  StepTooLarge(double dt, double limit);
};

class NonPSDDiffusion : public Error {
 public:
  using Error::Error;
};

class WindowTooShort : public Error {
 public:
  using Error::Error;
};

class PlanMismatch : public Error {
 public:
  using Error::Error;
};

// Qubit steady state requested with every rate equal to zero.
class Undefined : public Error {
 public:
  using Error::Error;
};

}  // namespace optoconj
