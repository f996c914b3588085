#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace egs::quad {

struct Options {
  double abs_tol = 1e-10;
  std::size_t max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod integration of f over the
/// partition given by `breakpoints` (ascending, at least two points).
/// The integrand is evaluated only at interior Kronrod nodes, never at a
/// breakpoint. Converges when the summed error estimate is at most
/// max(abs_tol, 50 * eps * integral of |f|); the second term is the
/// floating-point roundoff floor.
///
/// Throws QuadratureError (with best estimate and bound) when the interval
/// budget is exhausted, DomainError when f returns a non-finite value.
Result integrate(const Integrand& f, std::span<const double> breakpoints, const Options& options = {});

Result integrate(const Integrand& f, double a, double b, const Options& options = {});

}  // namespace egs::quad
