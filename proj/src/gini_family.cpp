#include "egs/gini_family.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "egs/error.hpp"

namespace egs {
namespace {

void check_r(double r) {
  if (r == 1.0) {
    throw ParameterError("r must be > 1; r = 1 is the risk-neutral limit where the Extended Gini vanishes");
  }
  if (!(r > 1.0) || !std::isfinite(r)) throw ParameterError("r must be a finite real > 1");
}

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
}

void check_u(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw ParameterError("u must lie in [0, 1]");
}

}  // namespace

void ParamSet::validate() const {
  check_p(p);
  check_r(r);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be a finite real >= 0");
}

bool ParamSet::coherent() const {
  validate();
  return lambda <= lambda_max(r, p);
}

ParamSet ParamSet::with_lambda_fraction(double p, double r, double fraction) {
  if (!(fraction >= 0.0)) throw ParameterError("lambda fraction must be >= 0");
  return ParamSet{p, r, fraction * lambda_max(r, p)};
}

std::string_view to_string(MeasureId id) {
  switch (id) {
    case MeasureId::VaR: return "VaR";
    case MeasureId::ES: return "ES";
    case MeasureId::Gini: return "Gini";
    case MeasureId::EGini: return "EGini";
    case MeasureId::TEG: return "TEG";
    case MeasureId::EGS: return "EGS";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::Quadrature: return "quadrature";
    case Method::Empirical: return "empirical";
  }
  return "?";
}

MeasureId parse_measure(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "var") return MeasureId::VaR;
  if (lower == "es") return MeasureId::ES;
  if (lower == "gini") return MeasureId::Gini;
  if (lower == "egini") return MeasureId::EGini;
  if (lower == "teg") return MeasureId::TEG;
  if (lower == "egs") return MeasureId::EGS;
  throw ParameterError("unknown measure '" + std::string(name) + "'");
}

double g_r(double u, double r) {
  check_u(u);
  check_r(r);
  return -r * std::pow(1.0 - u, r - 1.0);
}

double h_r(double u, double r) {
  check_u(u);
  check_r(r);
  return u + std::pow(1.0 - u, r) - 1.0;
}

double phi(double u, const ParamSet& params) {
  params.validate();
  check_u(u);
  if (u < params.p) return 0.0;
  const double d = 1.0 - params.p;
  const double tail = std::pow(d, params.r - 1.0) - params.r * std::pow(1.0 - u, params.r - 1.0);
  return (d + 2.0 * params.lambda * tail) / (d * d);
}

double lambda_max(double r, double p) {
  check_r(r);
  check_p(p);
  return 1.0 / (2.0 * (r - 1.0) * std::pow(1.0 - p, r - 2.0));
}

WeightFunction es_weight(double p) {
  check_p(p);
  const double w = 1.0 / (1.0 - p);
  return WeightFunction([w](double) { return w; }, p, 1.0, {}, 1.0);
}

WeightFunction gini_weight() {
  return WeightFunction([](double u) { return 2.0 * (2.0 * u - 1.0); }, 0.0, 1.0, {}, 0.0);
}

WeightFunction egini_weight(double r) {
  check_r(r);
  return WeightFunction([r](double u) { return 2.0 * (1.0 - r * std::pow(1.0 - u, r - 1.0)); }, 0.0, 1.0, {},
                        0.0);
}

WeightFunction teg_weight(double r, double p) {
  check_r(r);
  check_p(p);
  const double d = 1.0 - p;
  const double shift = std::pow(d, r - 1.0);
  const double scale = 2.0 / (d * d);
  return WeightFunction([r, shift, scale](double u) { return scale * (shift - r * std::pow(1.0 - u, r - 1.0)); },
                        p, 1.0, {}, 0.0);
}

WeightFunction egs_weight(const ParamSet& params) {
  params.validate();
  return WeightFunction([params](double u) { return phi(u, params); }, params.p, 1.0, {}, 1.0);
}

DistortionFunction egini_distortion(double r) {
  check_r(r);
  return DistortionFunction{[r](double u) { return u + std::pow(1.0 - u, r) - 1.0; },
                            [r](double u) { return 1.0 - r * std::pow(1.0 - u, r - 1.0); },
                            {}};
}

double var(const QuantileModel& q, double p) {
  check_p(p);
  return q.quantile(p);
}

double es(const QuantileModel& q, double p, double tol) { return choquet_integral(q, es_weight(p), tol); }
double es(const QuantileModel& q, double p) { return es(q, p, default_tolerance(q)); }

double gini(const QuantileModel& q, double tol) { return choquet_integral(q, gini_weight(), tol); }
double gini(const QuantileModel& q) { return gini(q, default_tolerance(q)); }

double egini(const QuantileModel& q, double r, double tol) { return choquet_integral(q, egini_weight(r), tol); }
double egini(const QuantileModel& q, double r) { return egini(q, r, default_tolerance(q)); }

double teg(const QuantileModel& q, double r, double p, double tol) {
  return choquet_integral(q, teg_weight(r, p), tol);
}
double teg(const QuantileModel& q, double r, double p) { return teg(q, r, p, default_tolerance(q)); }

MeasureValue egs(const QuantileModel& q, const ParamSet& params, double tol) {
  params.validate();
  return MeasureValue{choquet_integral(q, egs_weight(params), tol), MeasureId::EGS, params, Method::Quadrature,
                      params.coherent()};
}

MeasureValue egs(const QuantileModel& q, const ParamSet& params) { return egs(q, params, default_tolerance(q)); }

MeasureValue egs_split(const QuantileModel& q, const ParamSet& params, double tol) {
  params.validate();
  const double value = es(q, params.p, tol) + params.lambda * teg(q, params.r, params.p, tol);
  return MeasureValue{value, MeasureId::EGS, params, Method::Quadrature, params.coherent()};
}

}  // namespace egs
