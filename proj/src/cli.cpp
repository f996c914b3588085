#include "egs/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <optional>

#include "egs/error.hpp"
#include "egs/ingest.hpp"
#include "egs/report.hpp"
#include "egs/sensitivity.hpp"
#include "egs/verifier.hpp"

namespace egs {
namespace {

using ordered_json = nlohmann::ordered_json;

struct InputOptions {
  std::string input;
  std::string column = "0";
  bool header = false;
  std::string units = "decimal";
  bool no_negate = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--input", input, "CSV file of returns");
    cmd.add_option("--column", column, "Column name (needs --header) or 0-based index")->capture_default_str();
    cmd.add_flag("--header", header, "First non-comment line is a header");
    cmd.add_option("--units", units, "decimal or percent")
        ->check(CLI::IsMember({"decimal", "percent"}))
        ->capture_default_str();
    cmd.add_flag("--no-negate", no_negate, "Values are already losses (positive = loss)");
  }

  IngestConfig config() const {
    IngestConfig c;
    c.path = input;
    const bool numeric = !column.empty() && std::all_of(column.begin(), column.end(), ::isdigit);
    if (numeric)
      c.column = static_cast<std::size_t>(std::stoul(column));
    else
      c.column = column;
    c.header = header;
    c.units = units == "percent" ? Units::Percent : Units::Decimal;
    c.negate_returns = !no_negate;
    return c;
  }
};

struct LambdaOptions {
  std::optional<double> lambda;
  std::optional<double> fraction;

  void attach(CLI::App& cmd) {
    auto* a = cmd.add_option("--lambda", lambda, "Absolute loading");
    auto* f = cmd.add_option("--lambda-frac", fraction, "Loading as a fraction of the coherence bound (default 0.5)");
    a->excludes(f);
    f->excludes(a);
  }

  LambdaRule rule() const {
    if (lambda) return LambdaRule::absolute(*lambda);
    return LambdaRule::fraction(fraction.value_or(0.5));
  }

  ParamSet params(double p, double r) const {
    ParamSet ps{p, r, 0.0};
    ps.validate();
    ps.lambda = rule().resolve(r, p);
    ps.validate();
    return ps;
  }
};

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

void print_drift(const EmpiricalSample& sample, std::ostream& err) {
  const DriftCheck dc = drift_check(sample);
  err << "sample mean " << fmt(dc.mean) << " (std error " << fmt(dc.std_error) << ")\n";
  if (dc.drift) err << "warning: |mean| > 2 std errors; possible drift (heuristic, not a stationarity test)\n";
}

int cmd_compute(const InputOptions& in, const LambdaOptions& lo, const std::string& measure_name,
                const std::string& dist, double dof, double loc, double scale, double p, double r, bool json,
                std::ostream& out, std::ostream& err) {
  const MeasureId measure = parse_measure(measure_name);
  if (in.input.empty() == dist.empty()) throw ParameterError("give exactly one of --input or --dist");
  const ParamSet params = lo.params(p, r);

  std::optional<MeasureSource> source;
  std::string source_name;
  if (!in.input.empty()) {
    EmpiricalSample sample = ingest(in.config());
    print_drift(sample, err);
    source.emplace(std::move(sample));
    source_name = in.input;
  } else {
    if (dist == "uniform")
      source.emplace(DistributionSpec::uniform(loc - scale, loc + scale));
    else if (dist == "normal")
      source.emplace(DistributionSpec::normal(loc, scale));
    else
      source.emplace(DistributionSpec::student_t(dof, loc, scale));
    source_name = dist;
  }

  const MeasureValue mv = compute_single(*source, measure, params);
  if (!mv.coherent) err << "warning: lambda " << fmt(params.lambda) << " exceeds the coherence bound "
                        << fmt(lambda_max(params.r, params.p)) << "\n";
  if (json) {
    ordered_json j{{"measure", to_string(mv.measure)}, {"value", mv.value}, {"method", to_string(mv.method)},
                   {"source", source_name}, {"p", params.p}, {"r", params.r}, {"lambda", params.lambda},
                   {"coherent", mv.coherent}};
    out << j.dump(2) << "\n";
  } else {
    out << to_string(mv.measure) << " = " << fmt(mv.value, "%.12g") << " (" << to_string(mv.method) << ")\n";
  }
  return kExitOk;
}

int cmd_report(const InputOptions& in, const LambdaOptions& lo, const std::vector<double>& ps,
               const std::vector<double>& rs, std::uint64_t seed, bool json, std::ostream& out, std::ostream& err) {
  if (in.input.empty()) throw ParameterError("report needs --input");
  const EmpiricalSample sample = ingest(in.config());
  print_drift(sample, err);
  const RiskReport report = build_report(sample, ps, rs, lo.rule(), in.input, seed);
  for (const auto& w : report_warnings(report)) err << "warning: " << w << "\n";
  if (json)
    out << to_json(report) << "\n";
  else
    out << "lambda rule: " << report.meta.lambda_rule.describe() << ", n = " << report.meta.n << "\n"
        << format_table(report);
  return kExitOk;
}

ordered_json result_json(const VerifierResult& r, bool expected) {
  ordered_json j{{"axiom", to_string(r.axiom_case.axiom)}, {"trials", r.trials_run}, {"seed", r.axiom_case.seed},
                 {"tolerance", r.axiom_case.tolerance}, {"violations", r.violations},
                 {"worst_excess", r.worst_excess}, {"worst_case", r.worst_case}, {"passed", r.passed},
                 {"expected_to_hold", expected}};
  return j;
}

int cmd_verify(const LambdaOptions& lo, double p, double r, const std::string& axiom_name, std::size_t trials,
               std::uint64_t seed, double tolerance, bool json, std::ostream& out) {
  const ParamSet params = lo.params(p, r);
  ordered_json results = ordered_json::array();
  bool failed = false;

  if (axiom_name == "violation") {
    const VerifierResult v = find_subadditivity_violation(params, trials, seed, SearchStrategy::ConstructiveThenRandom,
                                                          tolerance);
    ordered_json j = result_json(v, params.coherent());
    j["axiom"] = "subadditivity_violation_search";
    j["found"] = v.counterexample.has_value();
    results.push_back(j);
    failed = v.counterexample.has_value() && params.coherent();
    if (!json)
      out << (v.counterexample ? "violation found: " + v.worst_case
                               : "no violation in " + std::to_string(v.trials_run) + " candidates")
          << "\n";
  } else {
    std::vector<Axiom> axioms;
    if (axiom_name == "all")
      axioms = {Axiom::Monotonicity, Axiom::Translation, Axiom::Homogeneity, Axiom::Subadditivity,
                Axiom::ComonotoneAdditivity, Axiom::EgsDominatesEs};
    else if (axiom_name != "cx")
      axioms = {parse_axiom(axiom_name)};

    for (Axiom a : axioms) {
      const VerifierResult v = verify_axiom(AxiomCase{a, trials, seed, tolerance}, params);
      // Monotonicity and subadditivity are only claimed inside the coherence bound.
      const bool expected = params.coherent() || (a != Axiom::Monotonicity && a != Axiom::Subadditivity);
      failed |= expected && !v.passed;
      results.push_back(result_json(v, expected));
      if (!json)
        out << (v.passed ? "PASS " : "FAIL ") << to_string(a) << ": " << v.violations << "/" << v.trials_run
            << " violations" << (v.passed ? "" : " (worst " + v.worst_case + ")")
            << (expected ? "" : " [not expected to hold]") << "\n";
    }
    if (axiom_name == "cx" || axiom_name == "all") {
      const VerifierResult v = verify_cx_spot(params, trials, seed, tolerance);
      ordered_json j = result_json(v, true);
      j["axiom"] = "convex_order_spot";
      results.push_back(j);
      failed |= !v.passed;
      if (!json)
        out << (v.passed ? "PASS " : "FAIL ") << "convex_order_spot: " << v.violations << "/" << v.trials_run
            << " violations" << (v.passed ? "" : " (worst " + v.worst_case + ")") << "\n";
    }
  }
  if (json) {
    ordered_json doc{{"p", params.p}, {"r", params.r}, {"lambda", params.lambda},
                     {"lambda_max", lambda_max(params.r, params.p)}, {"results", results}};
    out << doc.dump(2) << "\n";
  }
  return failed ? kExitVerification : kExitOk;
}

int cmd_sensitivity(const LambdaOptions& lo, double p, double r, double u, std::ostream& out, std::ostream& err) {
  const ParamSet params = lo.params(p, r);
  const auto rep = sensitivity::report(u, params);
  if (rep.at_kink) err << "warning: u = p is the indicator kink; right-hand values reported\n";
  ordered_json j{{"u", rep.u}, {"p", params.p}, {"r", params.r}, {"lambda", params.lambda},
                 {"at_kink", rep.at_kink}, {"dphi_du", rep.dphi_du}, {"dphi_dlambda", rep.dphi_dlambda},
                 {"dphi_dp", rep.dphi_dp}, {"dphi_dr", rep.dphi_dr}, {"d2phi_dudp", rep.d2phi_dudp},
                 {"d2phi_dudr", rep.d2phi_dudr}, {"fd_residuals", rep.fd_residuals}};
  ordered_json thresholds{{"lambda_max", lambda_max(r, p)}, {"dB_dp", sensitivity::dB_dp(r, p)},
                          {"dB_dr", sensitivity::dB_dr(r, p)}, {"r_critical", sensitivity::r_critical(p)},
                          {"dphi_du_dr_root", sensitivity::du_dr_root(r)},
                          {"dphi_dr_nonnegative", u >= p ? sensitivity::dphi_dr_condition(u, params) : true}};
  if (params.lambda > 0.0) {
    const auto t = sensitivity::dphi_dp_threshold(params);
    if (t.kind == sensitivity::PThreshold::Kind::Defined)
      thresholds["dphi_dp_u_star"] = t.u_star;
    else
      thresholds["dphi_dp_u_star"] = "always_negative";
  }
  j["thresholds"] = std::move(thresholds);
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extended Gini Shortfall risk measures", "egs"};
  app.require_subcommand(1);

  InputOptions in_compute, in_report;
  LambdaOptions lo_compute, lo_report, lo_verify, lo_sens;
  double p = 0.95, r = 2.0, u = 0.99, dof = 5.0, loc = 0.0, scale = 1.0, tolerance = 1e-9;
  std::string measure = "egs", dist, axiom = "all";
  std::vector<double> p_grid{0.90, 0.95, 0.99}, r_grid{2, 3, 6, 20, 30};
  std::uint64_t seed = 1;
  std::size_t trials = 10000;
  bool json = false;

  auto* compute = app.add_subcommand("compute", "Evaluate one measure on a distribution or a sample");
  in_compute.attach(*compute);
  lo_compute.attach(*compute);
  compute->add_option("--measure", measure, "var, es, gini, egini, teg or egs")->capture_default_str();
  compute->add_option("--dist", dist, "uniform, normal or t")->check(CLI::IsMember({"uniform", "normal", "t"}));
  compute->add_option("--df", dof, "Student-t degrees of freedom")->capture_default_str();
  compute->add_option("--loc", loc, "Location (uniform: midpoint)")->capture_default_str();
  compute->add_option("--scale", scale, "Scale (uniform: half width)")->capture_default_str();
  compute->add_option("--p", p, "Prudence level")->capture_default_str();
  compute->add_option("--r", r, "Risk-aversion parameter")->capture_default_str();
  compute->add_flag("--json", json, "Emit JSON");

  auto* report = app.add_subcommand("report", "EGS grid over p and r for a return series");
  in_report.attach(*report);
  lo_report.attach(*report);
  report->add_option("--p", p_grid, "Prudence levels")->delimiter(',')->capture_default_str();
  report->add_option("--r", r_grid, "Risk-aversion parameters")->delimiter(',')->capture_default_str();
  report->add_option("--seed", seed, "Recorded in the report metadata")->capture_default_str();
  report->add_flag("--json", json, "Emit JSON instead of the table");

  auto* verify = app.add_subcommand("verify", "Randomized axiom checks on the estimator");
  lo_verify.attach(*verify);
  verify->add_option("--p", p, "Prudence level")->capture_default_str();
  verify->add_option("--r", r, "Risk-aversion parameter")->capture_default_str();
  verify->add_option("--axiom", axiom, "all, cx, violation or one axiom name")->capture_default_str();
  verify->add_option("--trials", trials, "Trials per axiom (search budget for 'violation')")->capture_default_str();
  verify->add_option("--seed", seed, "Generator seed")->capture_default_str();
  verify->add_option("--tol", tolerance, "Tolerance, scaled by 1 + |value|")->capture_default_str();
  verify->add_flag("--json", json, "Emit JSON");

  auto* sens = app.add_subcommand("sensitivity", "Partial derivatives of phi at one point, as JSON");
  lo_sens.attach(*sens);
  sens->add_option("--p", p, "Prudence level")->capture_default_str();
  sens->add_option("--r", r, "Risk-aversion parameter")->capture_default_str();
  sens->add_option("--u", u, "Probability level in (0, 1)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed())
      return cmd_compute(in_compute, lo_compute, measure, dist, dof, loc, scale, p, r, json, out, err);
    if (report->parsed()) return cmd_report(in_report, lo_report, p_grid, r_grid, seed, json, out, err);
    if (verify->parsed()) return cmd_verify(lo_verify, p, r, axiom, trials, seed, tolerance, json, out);
    return cmd_sensitivity(lo_sens, p, r, u, out, err);
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace egs
