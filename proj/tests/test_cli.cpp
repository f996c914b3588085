#include <catch_amalgamated.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "egs/cli.hpp"
#include "egs/error.hpp"
#include "egs/ingest.hpp"
#include "egs/report.hpp"
#include "egs/rng.hpp"

using namespace egs;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::string kFixture = EGS_TEST_DATA_DIR "/synthetic_returns.csv";

EmpiricalSample parse(const std::string& text, IngestConfig cfg = {}) {
  std::istringstream in(text);
  return parse_series(in, cfg);
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IngestConfig fixture_config() {
  IngestConfig cfg;
  cfg.path = kFixture;
  cfg.header = true;
  cfg.column = std::string("return");
  return cfg;
}

}  // namespace

TEST_CASE("ingest: negation, sorting, units, comments") {
  const auto s = parse("-0.02\n0.01\n");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == -0.01);
  CHECK(s[1] == 0.02);

  IngestConfig pct;
  pct.units = Units::Percent;
  pct.negate_returns = false;
  CHECK(parse("1.5\n", pct)[0] == 0.015);

  IngestConfig named;
  named.header = true;
  named.column = std::string("ret");
  const auto n = parse("# comment\ndate,ret\n\n2020-01-01, 0.5\n# mid comment\n2020-01-02,-1\n", named);
  CHECK(n.size() == 2);
  CHECK(n[0] == -0.5);

  IngestConfig second;
  second.column = std::size_t{1};
  CHECK(parse("a,2\nb,3\n", second)[1] == -2.0);
}

TEST_CASE("ingest errors name the row") {
  try {
    parse("0.1\n0.2\nabc\n");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.row() == 3);
    CHECK_THAT(e.what(), ContainsSubstring("line 3"));
    CHECK_THAT(e.what(), ContainsSubstring("abc"));
  }
  CHECK_THROWS_AS(parse("0.1\nnan\n"), DataError);
  CHECK_THROWS_AS(parse("0.1\ninf\n"), DataError);
  CHECK_THROWS_AS(parse("# only comments\n"), DataError);
  CHECK_THROWS_AS(parse("0.1x\n"), DataError);
  IngestConfig second;
  second.column = std::size_t{1};
  CHECK_THROWS_AS(parse("1,2\n3\n", second), DataError);
  IngestConfig named;
  named.column = std::string("x");
  CHECK_THROWS_AS(parse("1\n", named), DataError);
  named.header = true;
  CHECK_THROWS_AS(parse("a,b\n1,2\n", named), DataError);
  IngestConfig missing;
  missing.path = "/nonexistent/returns.csv";
  CHECK_THROWS_AS(ingest(missing), DataError);
}

TEST_CASE("report rows and the lambda rule") {
  const auto sample = ingest(fixture_config());
  CHECK(sample.size() == 250);
  const double ps[] = {0.9, 0.95};
  const double rs[] = {2.0, 3.0, 20.0};
  const auto zero = build_report(sample, ps, rs, LambdaRule::fraction(0.0));
  for (const auto& row : zero.rows)
    for (const auto& c : row.cells) {
      CHECK(c.egs == row.es);
      CHECK(c.lambda == 0.0);
    }
  const auto mid = build_report(sample, ps, rs, LambdaRule::fraction(0.5), "fixture", 9);
  CHECK(mid.meta.n == 250);
  CHECK(mid.meta.source == "fixture");
  CHECK(mid.meta.seed == 9);
  for (const auto& row : mid.rows)
    for (const auto& c : row.cells) {
      CHECK(c.lambda == Catch::Approx(0.5 * lambda_max(c.r, row.p)).epsilon(1e-15));
      CHECK(c.coherent);
      CHECK(c.egs >= row.es);
    }
  CHECK(report_warnings(mid).empty());
  // lambda_max(2, 0.9) = 0.5 and lambda_max(3, 0.9) = 2.5.
  const auto fixed = build_report(sample, ps, rs, LambdaRule::absolute(0.6));
  CHECK(fixed.rows[0].cells[0].lambda == 0.6);
  CHECK_FALSE(fixed.rows[0].cells[0].coherent);
  CHECK(fixed.rows[0].cells[1].coherent);
  CHECK_FALSE(report_warnings(fixed).empty());
  CHECK_THROWS_AS(build_report(sample, {}, rs, LambdaRule{}), ParameterError);
}

TEST_CASE("report on a normal sample is close to the closed form") {
  std::mt19937_64 g = rng::stream(20240601, 0);
  std::vector<double> x(100000);
  for (double& v : x) v = rng::standard_normal(g);
  const auto sample = EmpiricalSample::from_losses(x);
  const double ps[] = {0.95};
  const double rs[] = {2.0};
  const auto rep = build_report(sample, ps, rs, LambdaRule::fraction(0.5));
  const auto exact = compute_single(DistributionSpec::normal(), MeasureId::EGS, ParamSet::with_lambda_fraction(0.95, 2.0, 0.5));
  CHECK_THAT(rep.rows[0].cells[0].egs, WithinRel(exact.value, 0.02));
}

TEST_CASE("JSON round trip and schema") {
  const auto sample = ingest(fixture_config());
  const double ps[] = {0.9, 0.95, 0.99};
  const double rs[] = {2, 3, 6, 20, 30};
  const auto rep = build_report(sample, ps, rs, LambdaRule::fraction(0.5), kFixture, 4);
  const std::string text = to_json(rep);
  CHECK(report_from_json(text) == rep);
  CHECK(to_json(report_from_json(text)) == text);
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"n", "source", "lambda_rule", "seed"}) CHECK(j.at("meta").contains(key));
  CHECK(j.at("grid").size() == 3);
  for (const char* key : {"r", "lambda", "egs", "coherent"}) CHECK(j.at("grid")[0].at("cells")[0].contains(key));
  CHECK_THROWS_AS(report_from_json("{\"meta\": {}}"), DataError);
  CHECK_THROWS_AS(report_from_json("not json"), DataError);
}

TEST_CASE("table layout matches the golden fixture") {
  const auto sample = ingest(fixture_config());
  const double ps[] = {0.9, 0.95, 0.99};
  const double rs[] = {2, 3, 6, 20, 30};
  const auto rep = build_report(sample, ps, rs, LambdaRule::fraction(0.5));
  const std::string table = format_table(rep);
  CHECK(table == slurp(EGS_TEST_DATA_DIR "/synthetic_table.txt"));
  CHECK_THAT(table, ContainsSubstring("r=2 (GS)"));
  CHECK_THAT(table, ContainsSubstring("p=95%"));
  for (const auto& row : rep.rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "ES=%.2f%%", 100.0 * row.es);
    CHECK_THAT(table, ContainsSubstring(buf));
  }
}

TEST_CASE("percent units scale every monetary cell by 100") {
  IngestConfig pct = fixture_config();
  pct.units = Units::Percent;
  const auto dec = build_report(ingest(fixture_config()), std::vector<double>{0.9, 0.99}, std::vector<double>{2, 6},
                                LambdaRule::fraction(0.5));
  const auto per = build_report(ingest(pct), std::vector<double>{0.9, 0.99}, std::vector<double>{2, 6},
                                LambdaRule::fraction(0.5));
  for (std::size_t i = 0; i < dec.rows.size(); ++i) {
    CHECK_THAT(dec.rows[i].var, WithinRel(100.0 * per.rows[i].var, 1e-14));
    CHECK_THAT(dec.rows[i].es, WithinRel(100.0 * per.rows[i].es, 1e-14));
    for (std::size_t j = 0; j < dec.rows[i].cells.size(); ++j)
      CHECK_THAT(dec.rows[i].cells[j].egs, WithinRel(100.0 * per.rows[i].cells[j].egs, 1e-13));
  }
}

TEST_CASE("drift heuristic") {
  CHECK(drift_check(EmpiricalSample::from_losses({1.0, 1.1, 0.9, 1.05})).drift);
  const auto d = drift_check(EmpiricalSample::from_losses({-1.0, 1.0, -1.0, 1.0}));
  CHECK_FALSE(d.drift);
  CHECK(d.mean == 0.0);
}

TEST_CASE("compute_single dispatch") {
  const auto es = compute_single(DistributionSpec::normal(), MeasureId::ES, ParamSet{0.975, 2.0, 0.0});
  CHECK_THAT(es.value, WithinRel(2.3378, 1e-4));
  CHECK(es.method == Method::Analytic);
  const auto g = compute_single(DistributionSpec::uniform(0.0, 1.0), MeasureId::Gini, ParamSet{});
  CHECK_THAT(g.value, WithinAbs(1.0 / 3.0, 1e-12));
  const auto gt = compute_single(DistributionSpec::student_t(5.0), MeasureId::Gini, ParamSet{});
  CHECK(gt.method == Method::Quadrature);
  const auto sample = EmpiricalSample::from_losses({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const ParamSet ps = ParamSet::with_lambda_fraction(0.8, 2.0, 0.5);
  const auto e = compute_single(sample, MeasureId::EGS, ps);
  CHECK(e.method == Method::Empirical);
  CHECK(e.value == egs_hat(sample, ps));
  // Sample TEG is consistent with the EGS decomposition on the same grid.
  const auto teg = compute_single(sample, MeasureId::TEG, ps);
  CHECK(teg.value > 0.0);
  const auto var = compute_single(DistributionSpec::uniform(-1.0, 1.0), MeasureId::VaR, ParamSet{0.9, 2.0, 0.0});
  CHECK_THAT(var.value, WithinRel(0.8, 1e-14));
  const auto incoherent = compute_single(DistributionSpec::normal(), MeasureId::EGS, ParamSet{0.95, 2.0, 0.6});
  CHECK_FALSE(incoherent.coherent);
  CHECK(std::isfinite(incoherent.value));
  CHECK_THROWS_AS(compute_single(DistributionSpec::student_t(1.0), MeasureId::ES, ParamSet{}), MomentError);
}

TEST_CASE("sample Gini and TEG match the distribution values for large samples") {
  std::mt19937_64 g = rng::stream(8, 0);
  std::vector<double> x(200000);
  for (double& v : x) v = rng::standard_normal(g);
  const auto s = EmpiricalSample::from_losses(x);
  const ParamSet ps{0.9, 3.0, 0.0};
  CHECK_THAT(compute_single(s, MeasureId::Gini, ps).value,
             WithinRel(compute_single(DistributionSpec::normal(), MeasureId::Gini, ps).value, 0.01));
  CHECK_THAT(compute_single(s, MeasureId::EGini, ps).value,
             WithinRel(compute_single(DistributionSpec::normal(), MeasureId::EGini, ps).value, 0.01));
  CHECK_THAT(compute_single(s, MeasureId::TEG, ps).value,
             WithinRel(compute_single(DistributionSpec::normal(), MeasureId::TEG, ps).value, 0.03));
}

TEST_CASE("cli: compute") {
  auto r = run({"compute", "--dist", "normal", "--measure", "es", "--p", "0.975"});
  CHECK(r.code == kExitOk);
  CHECK_THAT(r.out, ContainsSubstring("ES = 2.3378"));
  CHECK_THAT(r.out, ContainsSubstring("analytic"));
  r = run({"compute", "--input", kFixture, "--header", "--column", "return", "--json"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("method") == "empirical");
  CHECK(j.at("measure") == "EGS");
  r = run({"compute", "--dist", "normal", "--lambda", "0.6"});
  CHECK(r.code == kExitOk);
  CHECK_THAT(r.err, ContainsSubstring("coherence bound"));
}

TEST_CASE("cli: usage and data errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"compute", "--dist", "normal", "--lambda", "0.1", "--lambda-frac", "0.5"}).code == kExitUsage);
  CHECK(run({"compute"}).code == kExitUsage);
  CHECK(run({"compute", "--dist", "normal", "--p", "1.5"}).code == kExitUsage);
  CHECK(run({"compute", "--dist", "cauchy"}).code == kExitUsage);
  CHECK(run({"report", "--input", "/nonexistent.csv"}).code == kExitData);
  CHECK(run({"report", "--input", kFixture}).code == kExitData);  // header line is not numeric
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("cli: report output is deterministic") {
  const std::vector<std::string> args{"report", "--input", kFixture, "--header", "--column", "return", "--json"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const auto table = run({"report", "--input", kFixture, "--header", "--column", "return"});
  CHECK_THAT(table.out, ContainsSubstring(slurp(EGS_TEST_DATA_DIR "/synthetic_table.txt")));
  CHECK_THAT(table.err, ContainsSubstring("sample mean"));
  const auto custom = run({"report", "--input", kFixture, "--header", "--column", "1", "--p", "0.9,0.99", "--r",
                           "2,4", "--lambda-frac", "0.25", "--json"});
  const auto j = nlohmann::json::parse(custom.out);
  CHECK(j.at("grid").size() == 2);
  CHECK(j.at("grid")[1].at("cells").size() == 2);
  CHECK(j.at("meta").at("lambda_rule").at("value") == 0.25);
}

TEST_CASE("cli: verify exit status") {
  auto ok = run({"verify", "--trials", "200", "--p", "0.9", "--r", "2"});
  CHECK(ok.code == kExitOk);
  CHECK_THAT(ok.out, ContainsSubstring("PASS subadditivity"));
  // Beyond the bound subadditivity is not expected to hold, so its failure is not an error...
  auto beyond = run({"verify", "--trials", "2000", "--lambda-frac", "3", "--p", "0.9", "--r", "2", "--json"});
  CHECK(beyond.code == kExitOk);
  const auto j = nlohmann::json::parse(beyond.out);
  bool saw = false;
  for (const auto& res : j.at("results"))
    if (res.at("axiom") == "subadditivity") {
      saw = true;
      CHECK(res.at("expected_to_hold") == false);
      CHECK(res.at("passed") == false);
    }
  CHECK(saw);
  // ...but an impossible tolerance on an expected axiom is.
  CHECK(run({"verify", "--axiom", "homogeneity", "--trials", "200", "--tol", "-1"}).code == kExitVerification);
  auto search = run({"verify", "--axiom", "violation", "--lambda-frac", "1.5", "--p", "0.9", "--r", "2"});
  CHECK(search.code == kExitOk);
  CHECK_THAT(search.out, ContainsSubstring("violation found"));
  CHECK(run({"verify", "--axiom", "nonsense"}).code == kExitUsage);
}

TEST_CASE("cli: sensitivity JSON") {
  const auto r = run({"sensitivity", "--u", "0.99", "--p", "0.95", "--r", "2", "--lambda", "0.25"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("dphi_du").get<double>() == Catch::Approx(400.0).epsilon(1e-12));
  CHECK(j.at("fd_residuals").size() == 6);
  CHECK(j.at("thresholds").at("r_critical").get<double>() == Catch::Approx(1.3338082006953342));
  const auto kink = run({"sensitivity", "--u", "0.95", "--p", "0.95"});
  CHECK(kink.code == kExitOk);
  CHECK_THAT(kink.err, ContainsSubstring("kink"));
}
