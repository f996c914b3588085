#include "egs/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egs/error.hpp"
#include "egs/quadrature.hpp"
#include "egs/special.hpp"

namespace egs::analytic {
namespace {

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
}

void check_rp(double r, double p) {
  ParamSet{p, r, 0.0}.validate();
}

void require_finite_mean(double theta) {
  if (!(theta > 1.0)) {
    throw MomentError("Student-t with theta = " + std::to_string(theta) + " has no finite mean (need theta > 1)");
  }
}

// Shared assembly of the TEG closed form from the pointwise tail term Gbar(z^2/2).
double teg_from_tail_term(const SphericalSpec& spec, const std::function<double(double)>& tail_term, double r,
                          double p, double tol) {
  check_rp(r, p);
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  const double d = 1.0 - p;
  const double z_p = spec.upper_quantile(d);
  const double es_p = tail_term(z_p) / d;

  auto integrand_z = [&](double z) {
    const double density = spec.pdf(z);
    const double tail = tail_term(z);
    if (density == 0.0 || tail == 0.0) return 0.0;
    return std::pow(spec.sf(z), r - 2.0) * tail * density;
  };

  const double front = 2.0 * r * (r - 1.0) / d;
  const quad::Options opts{tol / front * d, 4000};
  double integral;
  if (std::isfinite(spec.support_radius)) {
    integral = quad::integrate(integrand_z, z_p, spec.support_radius, opts).value;
  } else {
    auto integrand_t = [&](double t) {
      const double one_minus = 1.0 - t;
      return integrand_z(z_p + t / one_minus) / (one_minus * one_minus);
    };
    integral = quad::integrate(integrand_t, 0.0, 1.0, opts).value;
  }
  const double conditional = integral / d;
  return front * conditional + 2.0 * (1.0 - r) * std::pow(d, r - 2.0) * es_p;
}

}  // namespace

QuantileModel SphericalSpec::quantile_model() const {
  const bool unbounded = !std::isfinite(support_radius);
  return QuantileModel(quantile, {unbounded, unbounded}, upper_quantile);
}

SphericalSpec SphericalSpec::uniform() {
  SphericalSpec s;
  s.name = "uniform";
  s.density_generator = [](double y) { return y <= 0.5 ? 1.0 : 0.0; };
  s.normalizing_constant = 0.5;
  s.tail_generator = [](double y) { return y <= 0.5 ? 0.25 - 0.5 * y : 0.0; };
  s.variance = 1.0 / 3.0;
  s.cdf = [](double z) { return std::clamp(0.5 * (z + 1.0), 0.0, 1.0); };
  s.sf = [](double z) { return std::clamp(0.5 * (1.0 - z), 0.0, 1.0); };
  s.quantile = [](double u) { return 2.0 * u - 1.0; };
  s.upper_quantile = [](double v) { return 1.0 - 2.0 * v; };
  s.support_radius = 1.0;
  return s;
}

SphericalSpec SphericalSpec::normal() {
  SphericalSpec s;
  s.name = "normal";
  const double c = 1.0 / std::sqrt(2.0 * special::kPi);
  s.density_generator = [](double y) { return std::exp(-y); };
  s.normalizing_constant = c;
  s.tail_generator = [c](double y) { return c * std::exp(-y); };
  s.variance = 1.0;
  s.cdf = special::normal_cdf;
  s.sf = special::normal_sf;
  s.quantile = special::normal_quantile;
  s.upper_quantile = [](double v) { return -special::normal_quantile(v); };
  return s;
}

SphericalSpec SphericalSpec::student_t(double theta) {
  if (!(theta > 0.5)) throw ParameterError("Student-t requires theta > 1/2");
  const StudentTParams t{theta};
  const double k = t.k();
  const double n = t.dof();
  SphericalSpec s;
  s.name = "student-t";
  s.density_generator = [theta, k](double y) { return std::pow(1.0 + y / k, -theta); };
  s.normalizing_constant = t.normalizing_constant();
  const double c = s.normalizing_constant;
  s.tail_generator = [theta, k, c](double y) {
    require_finite_mean(theta);
    return c * k / (theta - 1.0) * std::pow(1.0 + y / k, -(theta - 1.0));
  };
  if (theta > 1.5) s.variance = k / (theta - 1.5);
  s.cdf = [n](double z) { return special::student_t_cdf(z, n); };
  s.sf = [n](double z) { return special::student_t_sf(z, n); };
  s.quantile = [n](double u) { return special::student_t_quantile(u, n); };
  s.upper_quantile = [n](double v) { return special::student_t_upper_quantile(v, n); };
  return s;
}

StudentTParams StudentTParams::from_dof(double n) {
  if (!(n > 0.0)) throw ParameterError("Student-t degrees of freedom must be positive");
  return StudentTParams{0.5 * (n + 1.0)};
}

double StudentTParams::normalizing_constant() const {
  if (!(theta > 0.5)) throw ParameterError("Student-t requires theta > 1/2");
  return 1.0 / (std::sqrt(2.0 * k()) * special::beta(theta - 0.5, 0.5));
}

double StudentTParams::pdf(double z) const {
  return normalizing_constant() * std::pow(1.0 + z * z / (2.0 * k()), -theta);
}

double es_elliptical(const SphericalSpec& spec, double p) {
  check_p(p);
  const double d = 1.0 - p;
  const double z_p = spec.upper_quantile(d);
  return spec.tail_generator(0.5 * z_p * z_p) / d;
}

double teg_elliptical(const SphericalSpec& spec, double r, double p, double tol) {
  const auto& gbar = spec.tail_generator;
  return teg_from_tail_term(spec, [&gbar](double z) { return gbar(0.5 * z * z); }, r, p, tol);
}

double LocationScale::es(double p) const { return alpha + beta * es_elliptical(base, p); }

double LocationScale::teg(double r, double p, double tol) const {
  return beta * teg_elliptical(base, r, p, tol / beta);
}

double LocationScale::egs(const ParamSet& params, double tol) const {
  params.validate();
  return es(params.p) + params.lambda * teg(params.r, params.p, tol);
}

QuantileModel LocationScale::quantile_model() const {
  if (!(beta > 0.0)) throw ParameterError("location-scale requires beta > 0");
  return beta * base.quantile_model() + alpha;
}

double es_uniform(double p) {
  check_p(p);
  const double z_p = 2.0 * p - 1.0;
  return (1.0 - z_p * z_p) / (4.0 * (1.0 - p));
}

double teg_uniform(double r, double p) {
  check_rp(r, p);
  const double z_p = 2.0 * p - 1.0;
  return 2.0 * (r - 1.0) / (r + 1.0) * std::pow(0.5 * (1.0 - z_p), r - 1.0);
}

double es_normal(double p) {
  check_p(p);
  const double z_p = -special::normal_quantile(1.0 - p);
  return special::normal_pdf(z_p) / (1.0 - p);
}

double teg_normal(double r, double p, double tol) {
  // Gbar(z^2/2) = Phi'(z) for the normal generator.
  return teg_from_tail_term(SphericalSpec::normal(), special::normal_pdf, r, p, tol);
}

double es_student_t(double theta, double p) {
  require_finite_mean(theta);
  check_p(p);
  const StudentTParams t{theta};
  const double k = t.k();
  const double z_p = special::student_t_upper_quantile(1.0 - p, t.dof());
  return t.normalizing_constant() * k / ((1.0 - p) * (theta - 1.0)) *
         std::pow(1.0 + z_p * z_p / (2.0 * k), -(theta - 1.0));
}

double teg_student_t(double theta, double r, double p, double tol) {
  require_finite_mean(theta);
  if (!(theta > 1.5)) {
    throw MomentError("Student-t TEG closed form needs f_{theta-1}, defined only for theta > 3/2 (got theta = " +
                      std::to_string(theta) + ")");
  }
  const StudentTParams t{theta};
  const StudentTParams lower{theta - 1.0};
  const double ratio = std::sqrt(lower.k() / t.k());
  const double front = t.normalizing_constant() * t.k() / (lower.normalizing_constant() * (theta - 1.0));
  auto tail_term = [lower, ratio, front](double z) { return front * lower.pdf(ratio * z); };
  return teg_from_tail_term(SphericalSpec::student_t(theta), tail_term, r, p, tol);
}

double egs_uniform(const ParamSet& params) {
  params.validate();
  return es_uniform(params.p) + params.lambda * teg_uniform(params.r, params.p);
}

double egs_normal(const ParamSet& params, double tol) {
  params.validate();
  return es_normal(params.p) + params.lambda * teg_normal(params.r, params.p, tol);
}

double egs_student_t(double theta, const ParamSet& params, double tol) {
  params.validate();
  return es_student_t(theta, params.p) + params.lambda * teg_student_t(theta, params.r, params.p, tol);
}

}  // namespace egs::analytic
