#pragma once

#include <stdexcept>
#include <string>

namespace tspn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-finite input data.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A region's supporting line is vertical in the requested frame; the caller
/// is expected to perturb the frame angle and retry.
class VerticalInFrame : public Error {
 public:
  VerticalInFrame(std::size_t index, double angle)
      : Error("region " + std::to_string(index) + " is vertical in frame at angle " +
              std::to_string(angle)),
        index_(index),
        angle_(angle) {}
  std::size_t index() const { return index_; }
  double angle() const { return angle_; }

 private:
  std::size_t index_;
  double angle_;
};

class UnboundedObjective : public Error {
 public:
  UnboundedObjective() : Error("linear program objective is unbounded below") {}
  explicit UnboundedObjective(const std::string& what) : Error(what) {}
};

class NumericallyIll : public Error {
 public:
  using Error::Error;
};

class TooManyConstraints : public Error {
 public:
  using Error::Error;
};

}  // namespace tspn
