#pragma once
// Reference computations that share no code path with the library.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

// Double-exponential (tanh-sinh) rule on (a, b); endpoints are never evaluated.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double hp = 0.5 * std::numbers::pi;
  double prev = 0.0;
  for (int level = 3; level <= 12; ++level) {
    const double h = std::ldexp(1.0, -level);
    double sum = 0.0;
    for (int k = -static_cast<int>(4.0 / h); k <= static_cast<int>(4.0 / h); ++k) {
      const double t = k * h;
      const double arg = hp * std::sinh(t);
      const double w = hp * std::cosh(t) / (std::cosh(arg) * std::cosh(arg));
      // Distance to the nearer endpoint, computed without cancellation.
      const double gap = half / (std::exp(std::fabs(arg)) * std::cosh(arg));
      const double x = t < 0 ? a + gap : b - gap;
      if (!(x > a && x < b) || w == 0.0) continue;
      sum += w * f(x);
    }
    sum *= h * half;
    if (level > 3 && std::fabs(sum - prev) <= tol * std::max(1.0, std::fabs(sum))) return sum;
    prev = sum;
  }
  return prev;
}

// Integral over (a, inf) via x = a + t / (1 - t).
inline double upper(const std::function<double(double)>& f, double a, double tol = 1e-14) {
  return tanh_sinh([&](double t) { return f(a + t / (1.0 - t)) / ((1.0 - t) * (1.0 - t)); }, 0.0, 1.0, tol);
}

inline double whole_line(const std::function<double(double)>& f, double tol = 1e-14) {
  return upper(f, 0.0, tol) + upper([&](double x) { return f(-x); }, 0.0, tol);
}

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Student-t density via std::lgamma (single-threaded test use only).
inline double t_pdf(double x, double n) {
  const double logc = std::lgamma(0.5 * (n + 1.0)) - std::lgamma(0.5 * n) - 0.5 * std::log(n * std::numbers::pi);
  return std::exp(logc - 0.5 * (n + 1.0) * std::log1p(x * x / n));
}

// Root of a monotone g on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& g, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) > 0.0) == (g(hi) > 0.0))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

inline double t_cdf(double x, double n) {
  if (x == 0.0) return 0.5;
  const double tail = upper([n](double y) { return t_pdf(y, n); }, std::fabs(x));
  return x > 0 ? 1.0 - tail : tail;
}

// Choquet integral in x-space: int x w(F(x)) f(x) dx over the real line (or (lo, inf)).
inline double choquet_x(const std::function<double(double)>& pdf, const std::function<double(double)>& cdf,
                        const std::function<double(double)>& w, double lo = -INFINITY) {
  auto g = [&](double x) {
    const double dens = pdf(x);
    return dens == 0.0 ? 0.0 : x * w(cdf(x)) * dens;
  };
  return std::isinf(lo) ? whole_line(g) : upper(g, lo);
}

}  // namespace oracle
