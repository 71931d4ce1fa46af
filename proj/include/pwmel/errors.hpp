#pragma once

#include <stdexcept>
#include <string>

namespace pwmel {

/// Argument outside the mathematical domain of an operation (h <= 0, bad degree, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature hit its panel limit before meeting the tolerance.
class AccuracyFailure : public std::runtime_error {
 public:
  AccuracyFailure(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// A corner-point factor in the Φ ratios vanished.
class DegenerateCorner : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero scan could not decide whether a near-tangency is a zero.
class ResolutionFailure : public std::runtime_error {
 public:
  ResolutionFailure(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

class Unsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pwmel
