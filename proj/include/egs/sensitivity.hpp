#pragma once

#include <array>
#include <functional>

#include "egs/gini_family.hpp"

namespace egs::sensitivity {

// Partial derivatives of phi(u; r, p, lambda) and of the coherence bound
// B(r, p) = lambda_max(r, p). All phi derivatives carry the indicator of
// [p, 1]: they are 0 below p and, at the kink u = p itself, the right-hand
// value is returned (SensitivityReport::at_kink marks that case).

double dphi_du(double u, const ParamSet& params);
double dphi_dlambda(double u, const ParamSet& params);
double dphi_dp(double u, const ParamSet& params);
double dphi_dr(double u, const ParamSet& params);

/// Root of dphi_dlambda in u: 1 - (1-p) r^{-1/(r-1)}. It lies in (p, 1), so dphi_dlambda < 0 on [p, root)
/// and >= 0 above it.
double dphi_dlambda_root(double r, double p);

struct PThreshold {
  enum class Kind {
    /// dphi_dp >= 0 exactly for u >= u_star.
    Defined,
    /// Negative radicand: dphi_dp < 0 on all of (p, 1).
    AlwaysNegative,
  };
  Kind kind;
  double u_star;
};

/// u* = 1 - ((1-p - 2 lambda (r-3) (1-p)^{r-1}) / (4 lambda r))^{1/(r-1)}.
/// Requires lambda > 0 (ParameterError otherwise).
PThreshold dphi_dp_threshold(const ParamSet& params);

/// True exactly when dphi_dr(u) >= 0, evaluated in the form
///   (1-p)^{(1-p)^{r-1}} >= exp{(1-u)^{r-1} [r ln(1-u) + 1]}.
bool dphi_dr_condition(double u, const ParamSet& params);

double dB_dp(double r, double p);
double dB_dr(double r, double p);
/// r_0 = 1 - 1 / ln(1-p); dB_dr <= 0 on (1, r_0] and >= 0 beyond.
double r_critical(double p);

struct MixedPartials {
  double du_dp;
  double du_dr;
};

MixedPartials mixed_partials(double u, const ParamSet& params);
/// Sign change of d2phi/du dr in u: 1 - exp(-(2r-1) / (r^2 - r)).
double du_dr_root(double r);

/// Central difference with step halving until two successive estimates
/// agree to `agreement`, relative to max(|estimate|, |f(x)| / max(1, |x|)),
/// or the step reaches `min_step`.
double central_difference(const std::function<double(double)>& f, double x, double step = 1e-6,
                          double agreement = 1e-6, double min_step = 1e-9);

struct SensitivityReport {
  double u;
  ParamSet params;
  bool at_kink;
  double dphi_du;
  double dphi_dlambda;
  double dphi_dp;
  double dphi_dr;
  double d2phi_dudp;
  double d2phi_dudr;
  /// Relative deviation of each analytic value from its finite-difference estimate, same order as above.
  std::array<double, 6> fd_residuals;
};

SensitivityReport report(double u, const ParamSet& params);

}  // namespace egs::sensitivity
