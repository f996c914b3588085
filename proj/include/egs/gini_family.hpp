#pragma once

#include <string_view>

#include "egs/choquet.hpp"

namespace egs {

/// Prudence level p, generalization / risk-aversion parameter r and loading lambda.
struct ParamSet {
  double p = 0.95;
  double r = 2.0;
  double lambda = 0.0;

  /// Throws ParameterError unless 0 < p < 1, r > 1 and lambda >= 0.
  void validate() const;
  /// lambda <= lambda_max(r, p).
  bool coherent() const;

  /// Loading set to `fraction` of the coherence bound.
  static ParamSet with_lambda_fraction(double p, double r, double fraction);
};

enum class MeasureId { VaR, ES, Gini, EGini, TEG, EGS };
enum class Method { Analytic, Quadrature, Empirical };

std::string_view to_string(MeasureId id);
std::string_view to_string(Method m);
/// Case-insensitive; throws ParameterError on unknown names.
MeasureId parse_measure(std::string_view name);

struct MeasureValue {
  double value = 0.0;
  MeasureId measure = MeasureId::EGS;
  ParamSet params;
  Method method = Method::Quadrature;
  /// False when lambda exceeds the coherence bound; the value is still computed.
  bool coherent = true;
};

/// g_r(u) = -r (1-u)^{r-1}.
double g_r(double u, double r);
/// h_r(u) = u + (1-u)^r - 1, the convex distortion of the Extended Gini.
double h_r(double u, double r);

/// The EGS spectral weight
///   phi(u) = [1 - p + 2 lambda (g_r(u) + (1-p)^{r-1})] / (1-p)^2  on [p, 1], 0 below p.
double phi(double u, const ParamSet& params);

/// Supremum of the loadings for which phi >= 0, i.e. 1 / (2 (r-1) (1-p)^{r-2}).
double lambda_max(double r, double p);

// Weight functions of the family, with their exact total masses.
WeightFunction es_weight(double p);
WeightFunction gini_weight();
WeightFunction egini_weight(double r);
WeightFunction teg_weight(double r, double p);
WeightFunction egs_weight(const ParamSet& params);

/// h_r as a DistortionFunction (h_r(0) = h_r(1) = 0).
DistortionFunction egini_distortion(double r);

double var(const QuantileModel& q, double p);
double es(const QuantileModel& q, double p, double tol);
double es(const QuantileModel& q, double p);
double gini(const QuantileModel& q, double tol);
double gini(const QuantileModel& q);
double egini(const QuantileModel& q, double r, double tol);
double egini(const QuantileModel& q, double r);
double teg(const QuantileModel& q, double r, double p, double tol);
double teg(const QuantileModel& q, double r, double p);

/// EGS as a single Choquet integral against phi.
MeasureValue egs(const QuantileModel& q, const ParamSet& params, double tol);
MeasureValue egs(const QuantileModel& q, const ParamSet& params);
/// EGS assembled as ES_p + lambda * TEG_{r,p}; kept for cross-validation.
MeasureValue egs_split(const QuantileModel& q, const ParamSet& params, double tol);

}  // namespace egs
