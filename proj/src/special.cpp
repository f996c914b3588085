#include "egs/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "egs/error.hpp"

namespace egs::special {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;

// Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 0.5 * kEps) return h;
  }
  return h;
}

// I_x(a, b) given both x and y = 1 - x, so callers can supply whichever is exact.
double incomplete_beta_xy(double x, double y, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(x, a, b) / a;
  }
  return 1.0 - front * beta_continued_fraction(y, b, a) / b;
}

void check_dof(double dof) {
  if (!(dof > 0.0) || !std::isfinite(dof)) {
    throw ParameterError("Student-t degrees of freedom must be positive and finite");
  }
}

// Lower-tail normal quantile for u in (0, 0.5].
double normal_quantile_lower(double u) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (u < p_low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  // Halley refinement against the erfc-based cdf; two passes reach full precision.
  for (int i = 0; i < 2; ++i) {
    const double e = 0.5 * std::erfc(-x / kSqrt2) - u;
    const double t = e * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= t / (1.0 + 0.5 * x * t);
  }
  return x;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw ParameterError("log_gamma requires x > 0");
  static constexpr std::array<double, 9> coef{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double sum = coef[0];
  for (int i = 1; i < 9; ++i) sum += coef[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("log_beta requires a, b > 0");
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta(double a, double b) { return std::exp(log_beta(a, b)); }

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("incomplete_beta requires a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("incomplete_beta requires 0 <= x <= 1");
  return incomplete_beta_xy(x, 1.0 - x, a, b);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw ParameterError("normal_quantile requires 0 < u < 1");
  if (u <= 0.5) return normal_quantile_lower(u);
  return -normal_quantile_lower(1.0 - u);
}

double student_t_pdf(double x, double dof) {
  check_dof(dof);
  const double log_c = -0.5 * std::log(dof) - log_beta(0.5 * dof, 0.5);
  return std::exp(log_c - 0.5 * (dof + 1.0) * std::log1p(x * x / dof));
}

double student_t_sf(double x, double dof) {
  check_dof(dof);
  if (x == 0.0) return 0.5;
  const double x2 = x * x;
  // Tail mass beyond |x|, with both arguments of I formed without cancellation.
  const double tail = 0.5 * incomplete_beta_xy(dof / (dof + x2), x2 / (dof + x2), 0.5 * dof, 0.5);
  return x > 0.0 ? tail : 1.0 - tail;
}

double student_t_cdf(double x, double dof) {
  check_dof(dof);
  return student_t_sf(-x, dof);
}

double student_t_upper_quantile(double s, double dof) {
  check_dof(dof);
  if (!(s > 0.0 && s < 1.0)) throw ParameterError("student_t_upper_quantile requires 0 < s < 1");
  if (s > 0.5) return -student_t_upper_quantile(1.0 - s, dof);
  if (s == 0.5) return 0.0;

  const double log_s = std::log(s);
  // Bracket: sf(lo) >= s >= sf(hi).
  double lo = 0.0;
  double hi = std::max(1.0, -normal_quantile_lower(s));
  while (student_t_sf(hi, dof) > s) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw DomainError("student_t_upper_quantile: bracket overflow");
  }
  double z = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double sf = student_t_sf(z, dof);
    const double g = std::log(sf) - log_s;
    if (g > 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    // Newton on ln sf(z) - ln s; ln sf has derivative -pdf/sf.
    const double slope = -student_t_pdf(z, dof) / sf;
    double next = z - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::fabs(next - z);
    z = next;
    if (step <= 4.0 * kEps * std::max(1.0, z) || hi - lo <= 4.0 * kEps * std::max(1.0, z)) break;
  }
  return z;
}

double student_t_quantile(double u, double dof) {
  check_dof(dof);
  if (!(u > 0.0 && u < 1.0)) throw ParameterError("student_t_quantile requires 0 < u < 1");
  if (u < 0.5) return -student_t_upper_quantile(u, dof);
  if (u == 0.5) return 0.0;
  return student_t_upper_quantile(1.0 - u, dof);
}

}  // namespace egs::special
