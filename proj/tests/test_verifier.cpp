#include <catch_amalgamated.hpp>
#include <fstream>
#include <json.hpp>

#include "egs/error.hpp"
#include "egs/estimator.hpp"
#include "egs/verifier.hpp"

using namespace egs;

TEST_CASE("axioms hold inside the coherence bound") {
  for (double f : {0.0, 0.5, 1.0})
    for (Axiom a : {Axiom::Monotonicity, Axiom::Translation, Axiom::Homogeneity, Axiom::Subadditivity,
                    Axiom::ComonotoneAdditivity, Axiom::EgsDominatesEs}) {
      const auto res = verify_axiom(AxiomCase{a, 1500, 11, 1e-9}, ParamSet::with_lambda_fraction(0.9, 3.0, f));
      INFO(to_string(a) << " fraction " << f << ": " << res.worst_case);
      CHECK(res.passed);
      CHECK(res.violations == 0);
      CHECK(res.trials_run == 1500);
    }
}

TEST_CASE("translation and co-monotone additivity are tight") {
  const ParamSet ps = ParamSet::with_lambda_fraction(0.95, 2.0, 0.5);
  CHECK(verify_axiom(AxiomCase{Axiom::Translation, 500, 3, 1e-12}, ps).passed);
  CHECK(verify_axiom(AxiomCase{Axiom::ComonotoneAdditivity, 500, 3, 1e-12}, ps).passed);
}

TEST_CASE("subadditivity fails beyond the bound and the failure is recorded") {
  const auto res = verify_axiom(AxiomCase{Axiom::Subadditivity, 3000, 5, 1e-9}, ParamSet::with_lambda_fraction(0.9, 2.0, 3.0));
  CHECK_FALSE(res.passed);
  CHECK(res.violations > 0);
  CHECK(res.worst_excess > 0.0);
  CHECK(res.worst_case.find("trial") != std::string::npos);
}

TEST_CASE("results are reproducible from the seed") {
  const ParamSet ps = ParamSet::with_lambda_fraction(0.9, 2.0, 2.0);
  const AxiomCase c{Axiom::Subadditivity, 400, 77, 1e-9};
  const auto a = verify_axiom(c, ps);
  const auto b = verify_axiom(c, ps);
  CHECK(a.violations == b.violations);
  CHECK(a.worst_excess == b.worst_excess);
  CHECK(a.worst_case == b.worst_case);
  const auto other = verify_axiom(AxiomCase{Axiom::Subadditivity, 400, 78, 1e-9}, ps);
  CHECK(other.worst_case != a.worst_case);
}

TEST_CASE("violation finder") {
  for (auto [r, p] : {std::pair{2.0, 0.9}, std::pair{3.0, 0.95}}) {
    for (double f : {1.5, 2.0}) {
      const auto res = find_subadditivity_violation(ParamSet::with_lambda_fraction(p, r, f), 100000);
      REQUIRE(res.counterexample.has_value());
      CHECK_FALSE(res.passed);
      const auto& ce = *res.counterexample;
      CHECK(ce.lhs > ce.rhs);
      // Re-evaluate independently of the finder's bookkeeping.
      std::vector<double> sum(ce.x.size());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ce.x[i] + ce.y[i];
      const ParamSet ps = ParamSet::with_lambda_fraction(p, r, f);
      CHECK(egs_hat(sum, ps) > egs_hat(ce.x, ps) + egs_hat(ce.y, ps) + 1e-9);
    }
  }
}

TEST_CASE("random search alone also finds a violation") {
  const auto res = find_subadditivity_violation(ParamSet::with_lambda_fraction(0.9, 2.0, 1.5), 100000, 1,
                                                SearchStrategy::RandomOnly);
  CHECK(res.counterexample.has_value());
  CHECK(res.worst_case.find("random") != std::string::npos);
}

TEST_CASE("no violation at the bound or at lambda = 0") {
  for (double f : {0.0, 1.0}) {
    const auto res = find_subadditivity_violation(ParamSet::with_lambda_fraction(0.9, 2.0, f), 20000);
    CHECK(res.passed);
    CHECK_FALSE(res.counterexample.has_value());
    CHECK(res.trials_run == 20000);
  }
}

TEST_CASE("recorded counterexample fixtures still violate and are rediscovered") {
  std::ifstream in(EGS_TEST_DATA_DIR "/subadditivity_fixtures.json");
  REQUIRE(in);
  const auto fixtures = nlohmann::json::parse(in);
  REQUIRE(fixtures.size() == 2);
  for (const auto& fx : fixtures) {
    const ParamSet ps = ParamSet::with_lambda_fraction(fx.at("p"), fx.at("r"), fx.at("lambda_fraction"));
    const auto x = fx.at("x").get<std::vector<double>>();
    const auto y = fx.at("y").get<std::vector<double>>();
    std::vector<double> sum(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sum[i] = x[i] + y[i];
    const double lhs = egs_hat(sum, ps);
    const double rhs = egs_hat(x, ps) + egs_hat(y, ps);
    CHECK(lhs > rhs + 1e-9);
    CHECK(lhs == Catch::Approx(fx.at("lhs").get<double>()).epsilon(1e-12));
    const auto found = find_subadditivity_violation(ps, 100000);
    REQUIRE(found.counterexample.has_value());
    CHECK(found.counterexample->x == x);
    CHECK(found.counterexample->y == y);
  }
}

TEST_CASE("convex order spot check") {
  for (double r : {1.5, 2.0, 5.0}) {
    const auto res = verify_cx_spot(ParamSet::with_lambda_fraction(0.9, r, 0.5), 600, 21);
    INFO(res.worst_case);
    CHECK(res.passed);
  }
  // Outside the bound only the EGini ordering is checked.
  CHECK(verify_cx_spot(ParamSet::with_lambda_fraction(0.9, 2.0, 3.0), 300, 21).passed);
}

TEST_CASE("axiom names") {
  for (Axiom a : {Axiom::Monotonicity, Axiom::Translation, Axiom::Homogeneity, Axiom::Subadditivity,
                  Axiom::ComonotoneAdditivity, Axiom::EgsDominatesEs})
    CHECK(parse_axiom(to_string(a)) == a);
  CHECK_THROWS_AS(parse_axiom("convexity"), ParameterError);
  CHECK_THROWS_AS(verify_axiom(AxiomCase{Axiom::Translation, 0, 1, 1e-9}, ParamSet{}), ParameterError);
}
