#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace egs {

/// Integrable singularities of F^{-1} at the ends of (0, 1).
struct TailFlags {
  bool lower_unbounded = false;
  bool upper_unbounded = false;
};

/// A law described by its left-continuous generalized inverse
/// F^{-1}(u) = inf{x : F(x) >= u}, which is also the VaR_u convention.
///
/// Value type. Models compose: `a * q + m` is a location-scale transform and
/// `q1 + q2` is the quantile function of the co-monotone sum.
class QuantileModel {
 public:
  using Fn = std::function<double(double)>;

  /// `upper(s)` must return F^{-1}(1 - s); pass nullptr to derive it from `eval`.
  QuantileModel(Fn eval, TailFlags tails, Fn upper = nullptr);

  double operator()(double u) const { return eval_(u); }
  double quantile(double u) const { return eval_(u); }
  /// F^{-1}(1 - s), accurate for s near 0 when the model supplies it.
  double upper_quantile(double s) const { return upper_(s); }
  const TailFlags& tails() const noexcept { return tails_; }
  bool bounded() const noexcept { return !tails_.lower_unbounded && !tails_.upper_unbounded; }

  static QuantileModel constant(double c);
  /// U[a, b].
  static QuantileModel uniform(double a = 0.0, double b = 1.0);
  static QuantileModel normal(double mean = 0.0, double sd = 1.0);
  static QuantileModel student_t(double dof, double location = 0.0, double scale = 1.0);
  /// Empirical law of `losses` (sorted internally); F^{-1}(u) = X_(ceil(n u)).
  static QuantileModel empirical(std::vector<double> losses);

  friend QuantileModel operator+(const QuantileModel& a, const QuantileModel& b);
  friend QuantileModel operator+(const QuantileModel& q, double m);
  friend QuantileModel operator*(double c, const QuantileModel& q);

 private:
  Fn eval_;
  Fn upper_;
  TailFlags tails_;
};

/// A weighting function on [0, 1]. Zero outside `support`; `kinks` are
/// interior points where the function or its derivative jumps and where
/// quadrature must split.
class WeightFunction {
 public:
  using Fn = std::function<double(double)>;

  /// Computes `total_mass` by quadrature.
  WeightFunction(Fn eval, double support_lo, double support_hi, std::vector<double> kinks = {});
  /// Uses a known total mass.
  WeightFunction(Fn eval, double support_lo, double support_hi, std::vector<double> kinks, double total_mass);

  double operator()(double u) const;
  double support_lo() const noexcept { return lo_; }
  double support_hi() const noexcept { return hi_; }
  const std::vector<double>& kinks() const noexcept { return kinks_; }
  double total_mass() const noexcept { return mass_; }

 private:
  Fn eval_;
  double lo_;
  double hi_;
  std::vector<double> kinks_;
  double mass_;
};

/// A piecewise-differentiable distortion h on [0, 1] with h(0) = 0, given
/// together with its a.e. derivative. Jumps of h are not supported.
struct DistortionFunction {
  std::function<double(double)> eval;
  std::function<double(double)> derivative;
  std::vector<double> kinks;
};

/// 1e-10 for bounded models, 1e-8 otherwise.
double default_tolerance(const QuantileModel& q);

/// Evaluation points are kept in [kClamp, 1 - kClamp].
inline constexpr double kClamp = 1e-15;

/// Signed Choquet integral  int_0^1 F^{-1}(u) w(u) du,  restricted to the
/// support of w. Unbounded tails of q are integrated after the change of
/// variable u = 1 - e^{-t} (resp. u = e^{-t}).
double choquet_integral(const QuantileModel& q, const WeightFunction& w, double tol);
double choquet_integral(const QuantileModel& q, const WeightFunction& w);

/// int_0^1 F^{-1}(u) dh(u) for a piecewise-differentiable h, via w = h'.
double choquet_from_distortion(const QuantileModel& q, const DistortionFunction& h, double tol);

/// Exact Choquet integral of the empirical law of `sorted_losses` against
/// the distortion `h`: sum_i x_(i) [h(i/n) - h((i-1)/n)].
double empirical_choquet(std::span<const double> sorted_losses, const std::function<double(double)>& h);

}  // namespace egs
