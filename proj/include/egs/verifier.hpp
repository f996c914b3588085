#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egs/gini_family.hpp"

namespace egs {

enum class Axiom { Monotonicity, Translation, Homogeneity, Subadditivity, ComonotoneAdditivity, EgsDominatesEs };

std::string_view to_string(Axiom a);
/// Accepts the snake_case names printed by to_string; throws ParameterError otherwise.
Axiom parse_axiom(std::string_view name);

struct AxiomCase {
  Axiom axiom = Axiom::Subadditivity;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  /// Scaled by 1 + |reference value| of each trial.
  double tolerance = 1e-9;
};

/// Joint scenario table that produced a violation.
struct Counterexample {
  std::vector<double> x;
  std::vector<double> y;
  double lhs = 0.0;  // measure of the combined position
  double rhs = 0.0;  // bound it should not exceed
};

struct VerifierResult {
  AxiomCase axiom_case;
  std::size_t violations = 0;
  std::size_t trials_run = 0;
  /// Largest amount by which a trial exceeded its scaled tolerance (0 when none did).
  double worst_excess = 0.0;
  std::string worst_case;
  /// violations == 0. For the violation finder, false means a counterexample was found.
  bool passed = true;
  std::optional<Counterexample> counterexample;
};

/// Runs `axiom_case.trials` random trials of the axiom against egs_hat at `params`.
/// Scenario vectors have 50 to 500 equally likely rows.
VerifierResult verify_axiom(const AxiomCase& axiom_case, const ParamSet& params);

enum class SearchStrategy {
  /// Two-point disjoint-loss family first, random tables after.
  ConstructiveThenRandom,
  RandomOnly,
};

/// Searches for X, Y with egs_hat(X + Y) > egs_hat(X) + egs_hat(Y) + tolerance, stopping at the first hit
/// or after `budget` candidate pairs. Intended for lambda > lambda_max but callable anywhere.
VerifierResult find_subadditivity_violation(const ParamSet& params, std::size_t budget, std::uint64_t seed = 1,
                                            SearchStrategy strategy = SearchStrategy::ConstructiveThenRandom,
                                            double tolerance = 1e-9);

/// Mean-preserving spread spot check: Y = X + conditionally centred noise, or X scaled about its mean.
/// Counts trials where egini(Y) < egini(X) or, for coherent params, egs_hat(Y) < egs_hat(X).
VerifierResult verify_cx_spot(const ParamSet& params, std::size_t budget, std::uint64_t seed = 1,
                              double tolerance = 1e-9);

}  // namespace egs
