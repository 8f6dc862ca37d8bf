#pragma once

#include <stdexcept>
#include <string>

namespace nsfl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Finite-difference stencil leaves the admissible state space.
class DegenerateState : public Error {
 public:
  using Error::Error;
};

class StabilityViolation : public Error {
 public:
  StabilityViolation(const std::string& what, double z) : Error(what), z_(z) {}
  double z() const noexcept { return z_; }

 private:
  double z_;
};

/// Conservative cell data with no admissible temperature.
class NonPhysicalState : public Error {
 public:
  using Error::Error;
};

class PositivityFailure : public Error {
 public:
  PositivityFailure(const std::string& what, int i, int j) : Error(what), i_(i), j_(j) {}
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }

 private:
  int i_;
  int j_;
};

class CflViolation : public Error {
 public:
  using Error::Error;
};

class BoundsViolation : public Error {
 public:
  using Error::Error;
};

/// Euler state leaves the ideal branch Z < Z_threshold.
class ThresholdViolation : public Error {
 public:
  using Error::Error;
};

class InvalidProfile : public Error {
 public:
  using Error::Error;
};

class InvalidDelta : public Error {
 public:
  using Error::Error;
};

/// Layer thinner than the grid can resolve.
class UnresolvedLayer : public Error {
 public:
  using Error::Error;
};

class CoercivityFailure : public Error {
 public:
  using Error::Error;
};

class BoundViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsfl
