#pragma once

#include <stdexcept>
#include <string>

namespace egs {

/// A parameter lies outside its validity domain (p, r, lambda, degrees of freedom, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested moment does not exist for this distribution (e.g. Student-t mean with theta <= 1).
class MomentError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A quantile or weight evaluation produced a non-finite value where a finite one was required.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature exhausted its subdivision budget before reaching the tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Malformed or unreadable input data. `row()` is 1-based, 0 when not tied to a row.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& what, std::size_t row = 0) : std::runtime_error(what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace egs
