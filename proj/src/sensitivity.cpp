#include "egs/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "egs/error.hpp"

namespace egs::sensitivity {
namespace {

struct Point {
  double s;  // 1 - u
  double d;  // 1 - p
  double r;
  double lambda;
};

// Validates and reports whether u lies in the support [p, 1].
bool in_support(double u, const ParamSet& params) {
  params.validate();
  if (!(u >= 0.0 && u <= 1.0)) throw ParameterError("u must lie in [0, 1]");
  return u >= params.p;
}

Point point(double u, const ParamSet& params) { return {1.0 - u, 1.0 - params.p, params.r, params.lambda}; }

// s^{a} ln s with the s -> 0 limit 0 (a > 0).
double pow_log(double s, double a) { return s > 0.0 ? std::pow(s, a) * std::log(s) : 0.0; }

double relative_residual(double analytic, double numeric, double floor) {
  const double scale = std::max({std::fabs(analytic), std::fabs(numeric), floor});
  return scale > 0.0 ? std::fabs(analytic - numeric) / scale : 0.0;
}

}  // namespace

double dphi_du(double u, const ParamSet& params) {
  if (!in_support(u, params)) return 0.0;
  const auto [s, d, r, lambda] = point(u, params);
  if (lambda == 0.0) return 0.0;
  return 2.0 * lambda * r * (r - 1.0) * std::pow(s, r - 2.0) / (d * d);
}

double dphi_dlambda(double u, const ParamSet& params) {
  if (!in_support(u, params)) return 0.0;
  const auto [s, d, r, lambda] = point(u, params);
  return 2.0 * (std::pow(d, r - 1.0) - r * std::pow(s, r - 1.0)) / (d * d);
}

double dphi_dp(double u, const ParamSet& params) {
  if (!in_support(u, params)) return 0.0;
  const auto [s, d, r, lambda] = point(u, params);
  return (1.0 - 2.0 * lambda * (r - 3.0) * std::pow(d, r - 2.0) - 4.0 * lambda * r * std::pow(s, r - 1.0) / d) /
         (d * d);
}

double dphi_dr(double u, const ParamSet& params) {
  if (!in_support(u, params)) return 0.0;
  const auto [s, d, r, lambda] = point(u, params);
  const double bracket = std::log(d) * std::pow(d, r - 1.0) - std::pow(s, r - 1.0) - r * pow_log(s, r - 1.0);
  return 2.0 * lambda * bracket / (d * d);
}

double dphi_dlambda_root(double r, double p) {
  ParamSet{p, r, 0.0}.validate();
  return 1.0 - (1.0 - p) * std::pow(r, -1.0 / (r - 1.0));
}

PThreshold dphi_dp_threshold(const ParamSet& params) {
  params.validate();
  if (!(params.lambda > 0.0)) throw ParameterError("dphi_dp_threshold requires lambda > 0");
  const double d = 1.0 - params.p;
  const double r = params.r;
  const double radicand =
      (d - 2.0 * params.lambda * (r - 3.0) * std::pow(d, r - 1.0)) / (4.0 * params.lambda * r);
  if (radicand < 0.0) return {PThreshold::Kind::AlwaysNegative, 1.0};
  return {PThreshold::Kind::Defined, 1.0 - std::pow(radicand, 1.0 / (r - 1.0))};
}

bool dphi_dr_condition(double u, const ParamSet& params) {
  if (!in_support(u, params)) throw ParameterError("dphi_dr_condition is defined on [p, 1]");
  const auto [s, d, r, lambda] = point(u, params);
  // Logarithms of both sides of (1-p)^{(1-p)^{r-1}} >= exp{(1-u)^{r-1} [r ln(1-u) + 1]}.
  const double lhs = std::pow(d, r - 1.0) * std::log(d);
  const double rhs = std::pow(s, r - 1.0) + r * pow_log(s, r - 1.0);
  return lhs >= rhs;
}

double dB_dp(double r, double p) {
  ParamSet{p, r, 0.0}.validate();
  return (r - 2.0) * std::pow(1.0 - p, 1.0 - r) / (2.0 * (r - 1.0));
}

double dB_dr(double r, double p) {
  ParamSet{p, r, 0.0}.validate();
  const double d = 1.0 - p;
  const double scaled = (r - 1.0) * std::pow(d, r - 2.0);
  return -0.5 * std::pow(d, r - 2.0) * (1.0 + (r - 1.0) * std::log(d)) / (scaled * scaled);
}

double r_critical(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
  return 1.0 - 1.0 / std::log(1.0 - p);
}

MixedPartials mixed_partials(double u, const ParamSet& params) {
  if (!in_support(u, params)) return {0.0, 0.0};
  const auto [s, d, r, lambda] = point(u, params);
  if (lambda == 0.0) return {0.0, 0.0};
  const double s_pow = std::pow(s, r - 2.0);
  const double du_dp = 4.0 * lambda * r * (r - 1.0) * s_pow / (d * d * d);
  const double du_dr = 2.0 * lambda * ((2.0 * r - 1.0) * s_pow + (r * r - r) * pow_log(s, r - 2.0)) / (d * d);
  return {du_dp, du_dr};
}

double du_dr_root(double r) {
  if (!(r > 1.0)) throw ParameterError("r must be > 1");
  return 1.0 - std::exp(-(2.0 * r - 1.0) / (r * r - r));
}

double central_difference(const std::function<double(double)>& f, double x, double step, double agreement,
                          double min_step) {
  auto estimate = [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  // Estimates below this magnitude are indistinguishable from zero at the working precision.
  const double scale = std::fabs(f(x)) / std::max(1.0, std::fabs(x));
  double h = step;
  double prev = estimate(h);
  double best = prev;
  double best_gap = INFINITY;
  while (h > min_step) {
    h *= 0.5;
    const double next = estimate(h);
    const double gap = std::fabs(next - prev);
    if (gap <= agreement * std::max(std::fabs(next), scale)) return next;
    // Without agreement, keep the estimate from the most consistent pair of steps.
    if (gap < best_gap) {
      best_gap = gap;
      best = next;
    }
    prev = next;
  }
  return best;
}

SensitivityReport report(double u, const ParamSet& params) {
  params.validate();
  if (!(u > 0.0 && u < 1.0)) throw ParameterError("sensitivity report needs 0 < u < 1");
  SensitivityReport rep{};
  rep.u = u;
  rep.params = params;
  rep.at_kink = (u == params.p);
  rep.dphi_du = dphi_du(u, params);
  rep.dphi_dlambda = dphi_dlambda(u, params);
  rep.dphi_dp = dphi_dp(u, params);
  rep.dphi_dr = dphi_dr(u, params);
  const MixedPartials mixed = mixed_partials(u, params);
  rep.d2phi_dudp = mixed.du_dp;
  rep.d2phi_dudr = mixed.du_dr;

  if (u <= params.p) {
    // No two-sided difference exists at or below the kink.
    rep.fd_residuals.fill(0.0);
    return rep;
  }
  // Steps scale with the variable; u and p steps also stay inside (p, 1) so no stencil straddles the kink.
  const double room = 0.25 * std::min(u - params.p, 1.0 - u);
  auto check = [&](const std::function<double(double)>& f, double x, double analytic, bool near_kink) {
    const double unit = std::max(1.0, std::fabs(x));
    const double step = near_kink ? std::min(1e-6, room) : 1e-6 * unit;
    const double numeric = central_difference(f, x, step, 1e-6, std::min(1e-9 * unit, 0.1 * step));
    // Below 1e-4 of the natural scale |f| / |x| the derivative is treated as a zero crossing.
    const double floor = 1e-4 * std::fabs(f(x)) / unit;
    return relative_residual(analytic, numeric, floor);
  };
  auto vary = [&](double ParamSet::*field) {
    return [params, field](double v) {
      ParamSet q = params;
      q.*field = v;
      return q;
    };
  };
  const auto at_p = vary(&ParamSet::p);
  const auto at_r = vary(&ParamSet::r);
  const auto at_l = vary(&ParamSet::lambda);

  rep.fd_residuals = {
      check([&](double v) { return phi(v, params); }, u, rep.dphi_du, true),
      // phi is affine in lambda, so a centre moved off lambda = 0 gives the same slope.
      check([&](double v) { return phi(u, at_l(v)); }, std::max(params.lambda, 1e-3), rep.dphi_dlambda, false),
      check([&](double v) { return phi(u, at_p(v)); }, params.p, rep.dphi_dp, true),
      check([&](double v) { return phi(u, at_r(v)); }, params.r, rep.dphi_dr, false),
      check([&](double v) { return dphi_du(u, at_p(v)); }, params.p, rep.d2phi_dudp, true),
      check([&](double v) { return dphi_du(u, at_r(v)); }, params.r, rep.d2phi_dudr, false),
  };
  return rep;
}

}  // namespace egs::sensitivity
