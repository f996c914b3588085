#include "egs/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "egs/error.hpp"
#include "egs/simd/kernels.hpp"

namespace egs {

EmpiricalSample EmpiricalSample::from_losses(std::vector<double> losses) {
  if (losses.empty()) throw ParameterError("empirical sample is empty");
  for (double x : losses) {
    if (!std::isfinite(x)) throw ParameterError("empirical sample contains a non-finite value");
  }
  std::stable_sort(losses.begin(), losses.end());
  return EmpiricalSample(std::move(losses), SignConvention::LossesPositive);
}

EmpiricalSample EmpiricalSample::from_returns(std::vector<double> returns) {
  for (double& x : returns) x = -x;
  EmpiricalSample s = from_losses(std::move(returns));
  s.sign_ = SignConvention::ReturnsNegated;
  return s;
}

std::size_t quantile_index(std::size_t n, double p) {
  if (n == 0) throw ParameterError("quantile_index: empty sample");
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::clamp(std::ceil(nd * p), 1.0, nd));
  // ceil(n p) can be off by one when n p is not exactly representable.
  while (k > 1 && static_cast<double>(k - 1) / nd >= p) --k;
  while (k < n && static_cast<double>(k) / nd < p) ++k;
  return k;
}

EstimatorWeights estimator_weights(std::size_t n, const ParamSet& params) {
  params.validate();
  if (n == 0) throw ParameterError("estimator_weights: n must be >= 1");
  const double nd = static_cast<double>(n);
  const double d = 1.0 - params.p;
  const double r = params.r;

  // Grid points i/N >= p form the suffix starting at the empirical p-quantile index.
  const std::size_t first = quantile_index(n, params.p) - 1;
  std::vector<double> w(n, 0.0);
  std::span<double> tail(w.data() + first, n - first);
  for (std::size_t i = first; i < n; ++i) {
    const double s = 1.0 - static_cast<double>(i + 1) / nd;
    w[i] = std::pow(s, r - 1.0);
  }
  // phi(u) = a + b (1-u)^{r-1} on [p, 1].
  const double a = (d + 2.0 * params.lambda * std::pow(d, r - 1.0)) / (d * d);
  const double b = -2.0 * params.lambda * r / (d * d);
  simd::affine(tail, a, b, tail);
  // At lambda = lambda_max the first weight is zero up to rounding.
  if (params.coherent()) {
    for (double& v : tail) v = std::max(v, 0.0);
  }
  const double total = simd::sum(tail);
  if (!(total > 0.0)) throw ParameterError("estimator_weights: spectral weights sum to a non-positive total");
  simd::scale(tail, 1.0 / total);
  return EstimatorWeights{std::move(w), params};
}

double egs_hat(const EmpiricalSample& sample, const EstimatorWeights& weights) {
  if (weights.weights.size() != sample.size()) {
    throw ParameterError("egs_hat: weights do not match the sample size");
  }
  return simd::dot(sample.losses(), weights.weights);
}

double egs_hat(const EmpiricalSample& sample, const ParamSet& params) {
  return egs_hat(sample, estimator_weights(sample.size(), params));
}

double egs_hat(std::span<const double> losses, const ParamSet& params) {
  return egs_hat(EmpiricalSample::from_losses({losses.begin(), losses.end()}), params);
}

double var_hat(const EmpiricalSample& sample, double p) { return sample[quantile_index(sample.size(), p) - 1]; }

double es_hat(const EmpiricalSample& sample, double p) { return egs_hat(sample, ParamSet{p, 2.0, 0.0}); }

}  // namespace egs
