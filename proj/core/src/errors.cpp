#include "optoconj/errors.hpp"

#include <sstream>

namespace optoconj {

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

InvalidParameter::InvalidParameter(std::string field, std::string bound)
    : Error("invalid parameter '" + field + "': " + bound),
      field_(std::move(field)),
      bound_(std::move(bound)) {}

SingularPoint::SingularPoint(const std::string& what, double location)
    : Error(what + " (pole at omega = " + format_double(location) + ")"),
      location_(location) {}

GridMiss::GridMiss(double requested, double lo, double hi)
    : Error("frequency " + format_double(requested) + " outside grid [" + format_double(lo) +
            ", " + format_double(hi) + "]"),
      requested_(requested) {}

StepTooLarge::StepTooLarge(double dt, double limit)
    : Error("time step " + format_double(dt) + " exceeds resolution limit " +
            format_double(limit)) {}

}  // namespace optoconj
