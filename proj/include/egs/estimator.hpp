#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "egs/gini_family.hpp"

namespace egs {

enum class SignConvention { LossesPositive, ReturnsNegated };

/// Loss observations in ascending order. Positive values are losses.
class EmpiricalSample {
 public:
  /// Throws ParameterError when empty or when any value is not finite.
  static EmpiricalSample from_losses(std::vector<double> losses);
  /// Negates returns (profit-positive) into losses.
  static EmpiricalSample from_returns(std::vector<double> returns);

  std::span<const double> losses() const noexcept { return losses_; }
  std::size_t size() const noexcept { return losses_.size(); }
  SignConvention sign_convention() const noexcept { return sign_; }
  double operator[](std::size_t i) const { return losses_[i]; }

 private:
  EmpiricalSample(std::vector<double> sorted, SignConvention sign) : losses_(std::move(sorted)), sign_(sign) {}

  std::vector<double> losses_;
  SignConvention sign_ = SignConvention::LossesPositive;
};

/// Normalized spectral weights phi(i/N) / sum_k phi(k/N), i = 1..N.
struct EstimatorWeights {
  std::vector<double> weights;
  ParamSet params;
};

EstimatorWeights estimator_weights(std::size_t n, const ParamSet& params);

/// Empirical EGS: sum_i X_(i) w_i over the ascending order statistics.
double egs_hat(const EmpiricalSample& sample, const ParamSet& params);
double egs_hat(const EmpiricalSample& sample, const EstimatorWeights& weights);
/// Sorts a copy of `losses`; for scenario vectors that are not yet ordered.
double egs_hat(std::span<const double> losses, const ParamSet& params);

/// X_(k) with k the smallest index such that k / n >= p.
double var_hat(const EmpiricalSample& sample, double p);
/// egs_hat with lambda = 0.
double es_hat(const EmpiricalSample& sample, double p);

/// 1-based index of the empirical p-quantile, smallest k with k / n >= p.
std::size_t quantile_index(std::size_t n, double p);

}  // namespace egs
