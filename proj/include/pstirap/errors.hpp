#pragma once

#include <stdexcept>
#include <string>

namespace pstirap {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// The requested level line does not exist at `time`: one of the squared
/// Rabi frequencies came out negative beyond the clamping tolerance.
class InfeasibleDesign : public Error {
public:
  InfeasibleDesign(double time, double value, const std::string& what)
      : Error(what), time_(time), value_(value) {}
  double time() const { return time_; }
  double value() const { return value_; }

private:
  double time_;
  double value_;
};

class InvalidStep : public Error {
public:
  using Error::Error;
};

class InvalidState : public Error {
public:
  using Error::Error;
};

class UnreachableTarget : public Error {
public:
  using Error::Error;
};

class WindowingViolation : public Error {
public:
  using Error::Error;
};

class UnsupportedVariant : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace pstirap
