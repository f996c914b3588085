#include "egs/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "egs/error.hpp"

namespace egs::quad {
namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525937860, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double abs_value;
};

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const { return l.error < r.error; }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw DomainError("integrand is not finite at x = " + std::to_string(x));
  }
  return y;
}

Segment gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double result_k = fc * kWgk[10];
  double result_g = 0.0;
  double result_abs = std::fabs(result_k);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double lo = checked(f, center - dx);
    const double hi = checked(f, center + dx);
    f1[j] = lo;
    f2[j] = hi;
    result_k += kWgk[j] * (lo + hi);
    result_abs += kWgk[j] * (std::fabs(lo) + std::fabs(hi));
    if (j % 2 == 1) result_g += kWg[j / 2] * (lo + hi);
  }
  const double mean = 0.5 * result_k;
  double result_asc = kWgk[10] * std::fabs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    result_asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  }
  const double value = result_k * half;
  const double abs_value = result_abs * std::fabs(half);
  result_asc *= std::fabs(half);
  double error = std::fabs((result_k - result_g) * half);
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  if (abs_value > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * abs_value, error);
  }
  return {a, b, value, error, abs_value};
}

}  // namespace

Result integrate(const Integrand& f, std::span<const double> breakpoints, const Options& options) {
  if (breakpoints.size() < 2) throw ParameterError("integrate: need at least two breakpoints");
  if (!(options.abs_tol > 0.0)) throw ParameterError("integrate: tolerance must be positive");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] >= breakpoints[i - 1])) {
      throw ParameterError("integrate: breakpoints must be ascending");
    }
  }

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  Result out;
  double total = 0.0;
  double total_error = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i] == breakpoints[i - 1]) continue;
    Segment s = gauss_kronrod(f, breakpoints[i - 1], breakpoints[i]);
    out.evaluations += 21;
    total += s.value;
    total_error += s.error;
    total_abs += s.abs_value;
    heap.push(s);
  }

  auto converged = [&] { return total_error <= std::max(options.abs_tol, 50.0 * kEps * total_abs); };

  while (!heap.empty() && !converged()) {
    if (heap.size() >= options.max_intervals) {
      throw QuadratureError("integrate: subdivision budget exhausted", total, total_error);
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval cannot be split further in floating point.
      throw QuadratureError("integrate: interval below machine resolution", total, total_error);
    }
    heap.pop();
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the segments so the reported value carries no drift from
  // the incremental updates.
  out.value = 0.0;
  out.error = 0.0;
  out.intervals = heap.size();
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  for (const auto& s : segments) {
    out.value += s.value;
    out.error += s.error;
  }
  return out;
}

Result integrate(const Integrand& f, double a, double b, const Options& options) {
  const std::array<double, 2> pts{a, b};
  return integrate(f, pts, options);
}

}  // namespace egs::quad
