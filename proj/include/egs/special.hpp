#pragma once

// Special functions needed by the closed forms and the quantile models:
// log-gamma, the regularized incomplete Beta function and the normal and
// Student-t distributions. Everything here is pure and reentrant.

namespace egs::special {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// ln Gamma(x) for x > 0 (Lanczos, g = 7). Does not touch `signgam`.
double log_gamma(double x);

/// ln Beta(a, b) for a, b > 0.
double log_beta(double a, double b);

double beta(double a, double b);

/// Regularized incomplete Beta I_x(a, b) for 0 <= x <= 1.
double incomplete_beta(double x, double a, double b);

double normal_pdf(double x);
double normal_cdf(double x);
/// 1 - Phi(x) without cancellation.
double normal_sf(double x);
/// Phi^{-1}(u), u in (0, 1). Acklam's rational approximation refined by one Halley step.
double normal_quantile(double u);

/// Standard Student-t with `dof` degrees of freedom (dof > 0, real).
double student_t_pdf(double x, double dof);
double student_t_cdf(double x, double dof);
double student_t_sf(double x, double dof);
/// Left-continuous inverse of the Student-t cdf, by bracketed Newton iteration on log tail probabilities.
double student_t_quantile(double u, double dof);
/// F^{-1}(1 - s) computed from s directly, accurate for tiny s.
double student_t_upper_quantile(double s, double dof);

}  // namespace egs::special
