#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "egs/analytic.hpp"
#include "egs/estimator.hpp"
#include "egs/gini_family.hpp"

namespace egs {

/// How the loading of each (p, r) cell is chosen.
struct LambdaRule {
  enum class Kind { Absolute, Fraction };
  Kind kind = Kind::Fraction;
  /// The loading itself, or the fraction of lambda_max(r, p). The default is the midpoint.
  double value = 0.5;

  static LambdaRule absolute(double lambda) { return {Kind::Absolute, lambda}; }
  static LambdaRule fraction(double f) { return {Kind::Fraction, f}; }

  /// Resolved separately for every cell.
  double resolve(double r, double p) const;
  std::string describe() const;
  bool operator==(const LambdaRule&) const = default;
};

struct ReportCell {
  double r = 0.0;
  double lambda = 0.0;
  double egs = 0.0;
  bool coherent = true;
  bool operator==(const ReportCell&) const = default;
};

struct ReportRow {
  double p = 0.0;
  double var = 0.0;
  double es = 0.0;
  std::vector<ReportCell> cells;
  bool operator==(const ReportRow&) const = default;
};

struct ReportMeta {
  std::size_t n = 0;
  std::string source;
  LambdaRule lambda_rule;
  std::uint64_t seed = 0;
  SignConvention sign_convention = SignConvention::ReturnsNegated;
  bool operator==(const ReportMeta&) const = default;
};

struct RiskReport {
  ReportMeta meta;
  std::vector<ReportRow> rows;
  bool operator==(const RiskReport&) const = default;
};

/// var_hat and es_hat per p, egs_hat per (p, r). Throws ParameterError on empty grids or invalid cells.
RiskReport build_report(const EmpiricalSample& sample, std::span<const double> p_grid, std::span<const double> r_grid,
                        const LambdaRule& rule, std::string source = {}, std::uint64_t seed = 0);

/// Soft checks: an EGS cell below its row's ES, or a row where EGS increases with r.
std::vector<std::string> report_warnings(const RiskReport& report);

/// Full-precision JSON: {meta:{n,source,lambda_rule,seed,sign_convention}, grid:[{p,var,es,cells:[...]}]}.
std::string to_json(const RiskReport& report, int indent = 2);
/// Throws DataError on malformed input.
RiskReport report_from_json(const std::string& text);

/// Percent table with two decimals: rows p / VaR / ES, one EGS column per r.
std::string format_table(const RiskReport& report);

struct DriftCheck {
  double mean = 0.0;
  double std_error = 0.0;
  /// |mean| > 2 std_error. A heuristic, not a stationarity test.
  bool drift = false;
};

DriftCheck drift_check(const EmpiricalSample& sample);

/// Parametric law for compute_single.
struct DistributionSpec {
  enum class Family { Uniform, Normal, StudentT };
  Family family = Family::Normal;
  /// Uniform: [a, b] = [loc - scale, loc + scale]. Normal: mean, sd. Student-t: location, scale.
  double loc = 0.0;
  double scale = 1.0;
  double dof = 5.0;

  static DistributionSpec uniform(double a, double b) { return {Family::Uniform, 0.5 * (a + b), 0.5 * (b - a), 0.0}; }
  static DistributionSpec normal(double mean = 0.0, double sd = 1.0) { return {Family::Normal, mean, sd, 0.0}; }
  static DistributionSpec student_t(double dof, double loc = 0.0, double scale = 1.0) {
    return {Family::StudentT, loc, scale, dof};
  }

  analytic::LocationScale location_scale() const;
  QuantileModel quantile_model() const;
};

using MeasureSource = std::variant<DistributionSpec, EmpiricalSample>;

/// Closed forms where available, quadrature otherwise, the estimator for samples.
/// Gini and EGini on samples use the empirical Choquet sum with h_r.
MeasureValue compute_single(const MeasureSource& source, MeasureId measure, const ParamSet& params);

}  // namespace egs
