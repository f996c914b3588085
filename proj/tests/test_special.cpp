#include <catch_amalgamated.hpp>
#include <cmath>

#include "egs/special.hpp"
#include "oracles.hpp"

using namespace egs::special;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("log_gamma matches the standard library and integer factorials") {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 55.5, 170.0})
    CHECK_THAT(log_gamma(x), WithinAbs(std::lgamma(x), 1e-13 * std::max(1.0, std::fabs(std::lgamma(x)))));
  CHECK_THAT(log_gamma(6.0), WithinRel(std::log(120.0), 1e-14));
  CHECK_THAT(log_gamma(0.5), WithinRel(0.5 * std::log(kPi), 1e-14));
}

TEST_CASE("beta function identities") {
  CHECK_THAT(beta(1.0, 1.0), WithinRel(1.0, 1e-14));
  CHECK_THAT(beta(2.0, 3.0), WithinRel(1.0 / 12.0, 1e-14));
  CHECK_THAT(beta(0.5, 0.5), WithinRel(kPi, 1e-14));
  CHECK_THAT(log_beta(30.0, 40.0), WithinRel(std::lgamma(30.0) + std::lgamma(40.0) - std::lgamma(70.0), 1e-13));
}

TEST_CASE("incomplete beta special cases") {
  for (double x : {0.0, 1e-8, 0.1, 0.37, 0.5, 0.9, 0.999, 1.0}) {
    for (double a : {0.3, 1.0, 2.5, 17.0}) {
      CHECK_THAT(incomplete_beta(x, a, 1.0), WithinAbs(std::pow(x, a), 1e-14));
      CHECK_THAT(incomplete_beta(x, 1.0, a), WithinAbs(1.0 - std::pow(1.0 - x, a), 1e-14));
      // Reflection I_x(a, b) = 1 - I_{1-x}(b, a), on a pair where y = 1 - x is exact.
      const double y = 1.0 - x;
      CHECK_THAT(incomplete_beta(1.0 - y, a, 3.2) + incomplete_beta(y, 3.2, a), WithinAbs(1.0, 1e-13));
    }
  }
  // I_x(1/2, 1/2) = (2 / pi) asin(sqrt(x)).
  CHECK_THAT(incomplete_beta(0.3, 0.5, 0.5), WithinAbs(2.0 / kPi * std::asin(std::sqrt(0.3)), 1e-14));
}

TEST_CASE("normal distribution") {
  for (double x : {-30.0, -8.0, -1.0, 0.0, 0.5, 3.0, 9.0}) {
    CHECK_THAT(normal_cdf(x), WithinRel(oracle::normal_cdf(x), 1e-13));
    CHECK_THAT(normal_sf(x), WithinRel(oracle::normal_cdf(-x), 1e-13));
    CHECK_THAT(normal_pdf(x), WithinRel(oracle::normal_pdf(x), 1e-14));
  }
  for (double u : {1e-300, 1e-20, 1e-5, 0.02425, 0.3, 0.5, 0.7, 0.975, 0.97575, 1.0 - 1e-12}) {
    const double z = normal_quantile(u);
    CHECK_THAT(u < 0.5 ? normal_cdf(z) : normal_sf(z), WithinRel(u < 0.5 ? u : 1.0 - u, 1e-12));
  }
  CHECK_THAT(normal_quantile(0.975), WithinAbs(1.959963984540054, 1e-14));
  CHECK(normal_quantile(0.5) == 0.0);
}

TEST_CASE("Student-t closed forms for one and two degrees of freedom") {
  for (double x : {-50.0, -2.0, -0.3, 0.0, 0.7, 4.0, 1e3}) {
    CHECK_THAT(student_t_cdf(x, 1.0), WithinAbs(0.5 + std::atan(x) / kPi, 1e-14));
    CHECK_THAT(student_t_cdf(x, 2.0), WithinAbs(0.5 + x / (2.0 * std::sqrt(2.0 + x * x)), 1e-14));
    CHECK_THAT(student_t_pdf(x, 1.0), WithinRel(1.0 / (kPi * (1.0 + x * x)), 1e-13));
  }
  CHECK_THAT(student_t_sf(1e6, 1.0), WithinRel(std::atan(1e-6) / kPi, 1e-10));
}

TEST_CASE("Student-t against numerical integration of the density") {
  for (double n : {2.5, 5.0, 30.0})
    for (double x : {-3.0, -0.5, 0.8, 2.5}) CHECK_THAT(student_t_cdf(x, n), WithinAbs(oracle::t_cdf(x, n), 1e-12));
}

TEST_CASE("Student-t quantiles") {
  CHECK_THAT(student_t_quantile(0.975, 5.0), WithinRel(2.570581835636314, 1e-12));
  CHECK_THAT(student_t_quantile(0.99, 1.0), WithinRel(std::tan(kPi * 0.49), 1e-12));
  for (double n : {0.7, 1.0, 3.0, 5.0, 100.0})
    for (double u : {1e-12, 0.01, 0.4, 0.5, 0.95, 0.999999}) {
      const double x = student_t_quantile(u, n);
      CHECK_THAT(student_t_cdf(x, n), WithinRel(u, 1e-11));
    }
  // Upper quantile from s directly, where 1 - s is not representable.
  const double x = student_t_upper_quantile(1e-18, 5.0);
  CHECK_THAT(student_t_sf(x, 5.0), WithinRel(1e-18, 1e-10));
}
