#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "egs/choquet.hpp"
#include "egs/gini_family.hpp"

namespace egs::analytic {

/// A univariate spherical law Z ~ S(g) with pdf f(z) = c g(z^2 / 2) and
/// tail generator Gbar(y) = c * int_y^inf g(x) dx.
struct SphericalSpec {
  std::string name;
  std::function<double(double)> density_generator;
  double normalizing_constant = 1.0;
  std::function<double(double)> tail_generator;
  std::optional<double> variance;
  std::function<double(double)> cdf;
  /// 1 - cdf, evaluated without cancellation.
  std::function<double(double)> sf;
  std::function<double(double)> quantile;
  /// quantile(1 - s).
  std::function<double(double)> upper_quantile;
  /// Density vanishes for |z| > support_radius.
  double support_radius = std::numeric_limits<double>::infinity();

  double pdf(double z) const { return normalizing_constant * density_generator(0.5 * z * z); }
  QuantileModel quantile_model() const;

  /// U[-1, 1]: g = 1 on [0, 1/2], c = 1/2.
  static SphericalSpec uniform();
  /// N(0, 1): g(y) = e^{-y}, c = 1/sqrt(2 pi).
  static SphericalSpec normal();
  /// Standard Student-t in the (theta, k_theta) parametrization, theta > 1/2.
  static SphericalSpec student_t(double theta);
};

/// theta = (n + 1) / 2 and k_theta = n / 2 for n degrees of freedom.
struct StudentTParams {
  double theta;

  static StudentTParams from_dof(double n);
  double k() const { return theta - 0.5; }
  double dof() const { return 2.0 * theta - 1.0; }
  /// c_theta = 1 / (sqrt(2 k_theta) Beta(theta - 1/2, 1/2)).
  double normalizing_constant() const;
  /// f_theta(z) = c_theta (1 + z^2 / (2 k_theta))^{-theta}.
  double pdf(double z) const;
};

/// ES_p(Z) = Gbar(z_p^2 / 2) / (1 - p).
double es_elliptical(const SphericalSpec& spec, double p);

/// TEG_{r,p}(Z) = (2 r (r-1) / (1-p)) E[(1-F(Z))^{r-2} Gbar(Z^2/2) | Z > z_p]
///              + 2 (1 - r) (1-p)^{r-2} ES_p(Z).
/// The conditional expectation is a one-dimensional integral over (z_p, inf),
/// compactified by z = z_p + t / (1 - t).
double teg_elliptical(const SphericalSpec& spec, double r, double p, double tol = 1e-10);

/// X = alpha + beta Z.
struct LocationScale {
  SphericalSpec base;
  double alpha = 0.0;
  double beta = 1.0;

  double es(double p) const;
  double teg(double r, double p, double tol = 1e-10) const;
  double egs(const ParamSet& params, double tol = 1e-10) const;
  QuantileModel quantile_model() const;
};

/// Z ~ U[-1, 1], z_p = 2p - 1.
double es_uniform(double p);
/// Closed form 2 (r-1) / (r+1) * ((1 - z_p) / 2)^{r-1}; no quadrature.
double teg_uniform(double r, double p);

double es_normal(double p);
double teg_normal(double r, double p, double tol = 1e-10);

/// Requires theta > 1 (finite mean), otherwise MomentError.
double es_student_t(double theta, double p);
/// Uses Gbar(z^2/2) = c_theta k_theta / (c_{theta-1} (theta-1)) f_{theta-1}(sqrt(k_{theta-1}/k_theta) z),
/// which needs theta > 3/2; smaller theta raises MomentError.
double teg_student_t(double theta, double r, double p, double tol = 1e-10);

/// EGS from the closed forms, ES + lambda TEG.
double egs_uniform(const ParamSet& params);
double egs_normal(const ParamSet& params, double tol = 1e-10);
double egs_student_t(double theta, const ParamSet& params, double tol = 1e-10);

}  // namespace egs::analytic
