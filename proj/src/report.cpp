#include "egs/report.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "egs/error.hpp"
#include "egs/special.hpp"

namespace egs {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(SignConvention s) {
  return s == SignConvention::LossesPositive ? "losses_positive" : "returns_negated";
}

SignConvention parse_sign(const std::string& s) {
  if (s == "losses_positive") return SignConvention::LossesPositive;
  if (s == "returns_negated") return SignConvention::ReturnsNegated;
  throw DataError("unknown sign convention '" + s + "'");
}

std::string printf_str(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string percent(double v) { return printf_str("%.2f%%", 100.0 * v); }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

constexpr std::size_t kLabelWidth = 13;
constexpr std::size_t kCellWidth = 10;

}  // namespace

double LambdaRule::resolve(double r, double p) const {
  if (!(value >= 0.0) || !std::isfinite(value)) throw ParameterError("lambda rule value must be finite and >= 0");
  return kind == Kind::Absolute ? value : value * lambda_max(r, p);
}

std::string LambdaRule::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << (kind == Kind::Absolute ? "absolute " : "fraction ") << value;
  return os.str();
}

RiskReport build_report(const EmpiricalSample& sample, std::span<const double> p_grid, std::span<const double> r_grid,
                        const LambdaRule& rule, std::string source, std::uint64_t seed) {
  if (p_grid.empty() || r_grid.empty()) throw ParameterError("report grids must be non-empty");
  RiskReport report;
  report.meta = ReportMeta{sample.size(), std::move(source), rule, seed, sample.sign_convention()};
  for (double p : p_grid) {
    ReportRow row;
    row.p = p;
    row.var = var_hat(sample, p);
    row.es = es_hat(sample, p);
    for (double r : r_grid) {
      ParamSet params{p, r, 0.0};
      params.validate();
      params.lambda = rule.resolve(r, p);
      row.cells.push_back(ReportCell{r, params.lambda, egs_hat(sample, params), params.coherent()});
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<std::string> report_warnings(const RiskReport& report) {
  std::vector<std::string> out;
  for (const auto& row : report.rows) {
    const std::string tag = "p=" + printf_str("%g", row.p);
    for (const auto& cell : row.cells) {
      if (cell.egs < row.es - 1e-12 * (1.0 + std::fabs(row.es)))
        out.push_back(tag + " r=" + printf_str("%g", cell.r) + ": EGS below ES");
      if (!cell.coherent) out.push_back(tag + " r=" + printf_str("%g", cell.r) + ": lambda above the coherence bound");
    }
    for (std::size_t j = 1; j < row.cells.size(); ++j) {
      const auto& a = row.cells[j - 1];
      const auto& b = row.cells[j];
      if (b.r > a.r && b.egs > a.egs + 1e-12 * (1.0 + std::fabs(a.egs)))
        out.push_back(tag + ": EGS increases from r=" + printf_str("%g", a.r) + " to r=" + printf_str("%g", b.r));
    }
  }
  return out;
}

std::string to_json(const RiskReport& report, int indent) {
  ordered_json meta;
  meta["n"] = report.meta.n;
  meta["source"] = report.meta.source;
  meta["lambda_rule"] = {
      {"kind", report.meta.lambda_rule.kind == LambdaRule::Kind::Absolute ? "absolute" : "fraction"},
      {"value", report.meta.lambda_rule.value}};
  meta["seed"] = report.meta.seed;
  meta["sign_convention"] = to_string(report.meta.sign_convention);

  ordered_json grid = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json cells = ordered_json::array();
    for (const auto& c : row.cells)
      cells.push_back({{"r", c.r}, {"lambda", c.lambda}, {"egs", c.egs}, {"coherent", c.coherent}});
    grid.push_back({{"p", row.p}, {"var", row.var}, {"es", row.es}, {"cells", std::move(cells)}});
  }
  ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["grid"] = std::move(grid);
  return doc.dump(indent);
}

RiskReport report_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    RiskReport report;
    const auto& meta = doc.at("meta");
    report.meta.n = meta.at("n").get<std::size_t>();
    report.meta.source = meta.at("source").get<std::string>();
    const auto& rule = meta.at("lambda_rule");
    const std::string kind = rule.at("kind").get<std::string>();
    if (kind != "absolute" && kind != "fraction") throw DataError("unknown lambda rule kind '" + kind + "'");
    report.meta.lambda_rule = {kind == "absolute" ? LambdaRule::Kind::Absolute : LambdaRule::Kind::Fraction,
                               rule.at("value").get<double>()};
    report.meta.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.contains("sign_convention"))
      report.meta.sign_convention = parse_sign(meta.at("sign_convention").get<std::string>());
    for (const auto& row : doc.at("grid")) {
      ReportRow r{row.at("p").get<double>(), row.at("var").get<double>(), row.at("es").get<double>(), {}};
      for (const auto& c : row.at("cells"))
        r.cells.push_back({c.at("r").get<double>(), c.at("lambda").get<double>(), c.at("egs").get<double>(),
                           c.at("coherent").get<bool>()});
      report.rows.push_back(std::move(r));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
}

std::string format_table(const RiskReport& report) {
  if (report.rows.empty()) return {};
  const auto& header_cells = report.rows.front().cells;
  std::string rule_line = std::string(kLabelWidth, '-');
  std::string out = pad("EGS", kLabelWidth);
  for (const auto& c : header_cells) {
    std::string title = "r=" + printf_str("%g", c.r);
    if (c.r == 2.0) title += " (GS)";
    out += "| " + pad(title, kCellWidth);
    rule_line += "+" + std::string(kCellWidth + 1, '-');
  }
  while (out.back() == ' ') out.pop_back();
  out += "\n" + rule_line + "\n";

  auto line = [&](const std::string& label, const std::vector<std::string>& cells) {
    std::string s = pad(label, kLabelWidth);
    for (std::size_t j = 0; j < header_cells.size(); ++j) s += "| " + pad(j < cells.size() ? cells[j] : "", kCellWidth);
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };

  for (const auto& row : report.rows) {
    std::vector<std::string> values;
    for (const auto& c : row.cells) values.push_back(percent(c.egs));
    out += line("p=" + printf_str("%g", 100.0 * row.p) + "%", {});
    out += line("VaR=" + percent(row.var), values);
    out += line("ES=" + percent(row.es), {});
    out += rule_line + "\n";
  }
  return out;
}

DriftCheck drift_check(const EmpiricalSample& sample) {
  const auto x = sample.losses();
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = x.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const double se = sd / std::sqrt(n);
  return {mean, se, std::fabs(mean) > 2.0 * se};
}

analytic::LocationScale DistributionSpec::location_scale() const {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(loc))
    throw ParameterError("distribution scale must be positive and finite");
  switch (family) {
    case Family::Uniform:
      return {analytic::SphericalSpec::uniform(), loc, scale};
    case Family::Normal:
      return {analytic::SphericalSpec::normal(), loc, scale};
    case Family::StudentT:
      if (!(dof > 0.0)) throw ParameterError("degrees of freedom must be > 0");
      return {analytic::SphericalSpec::student_t(analytic::StudentTParams::from_dof(dof).theta), loc, scale};
  }
  throw ParameterError("unknown distribution family");
}

QuantileModel DistributionSpec::quantile_model() const { return location_scale().quantile_model(); }

namespace {

MeasureValue from_distribution(const DistributionSpec& spec, MeasureId measure, const ParamSet& params) {
  const analytic::LocationScale ls = spec.location_scale();
  MeasureValue mv{0.0, measure, params, Method::Analytic, true};
  switch (measure) {
    case MeasureId::VaR:
      params.validate();
      mv.value = ls.alpha + ls.beta * ls.base.quantile(params.p);
      break;
    case MeasureId::ES:
      params.validate();
      mv.value = ls.es(params.p);
      break;
    case MeasureId::TEG:
      params.validate();
      mv.value = ls.teg(params.r, params.p);
      break;
    case MeasureId::EGS:
      params.validate();
      mv.value = ls.egs(params);
      mv.coherent = params.coherent();
      break;
    case MeasureId::Gini:
      if (spec.family == DistributionSpec::Family::Uniform) {
        mv.value = 2.0 * spec.scale / 3.0;  // (b - a) / 3
      } else if (spec.family == DistributionSpec::Family::Normal) {
        mv.value = 2.0 * spec.scale / std::sqrt(special::kPi);
      } else {
        mv.value = gini(ls.quantile_model());
        mv.method = Method::Quadrature;
      }
      break;
    case MeasureId::EGini:
      mv.value = egini(ls.quantile_model(), params.r);
      mv.method = Method::Quadrature;
      break;
  }
  return mv;
}

MeasureValue from_sample(const EmpiricalSample& sample, MeasureId measure, const ParamSet& params) {
  params.validate();
  MeasureValue mv{0.0, measure, params, Method::Empirical, true};
  const auto x = sample.losses();
  const double r = params.r;
  switch (measure) {
    case MeasureId::VaR:
      mv.value = var_hat(sample, params.p);
      break;
    case MeasureId::ES:
      mv.value = es_hat(sample, params.p);
      break;
    case MeasureId::EGS:
      mv.value = egs_hat(sample, params);
      mv.coherent = params.coherent();
      break;
    case MeasureId::Gini:
      mv.value = 2.0 * empirical_choquet(x, [](double u) { return h_r(u, 2.0); });
      break;
    case MeasureId::EGini:
      mv.value = 2.0 * empirical_choquet(x, [r](double u) { return h_r(u, r); });
      break;
    case MeasureId::TEG: {
      const double p = params.p;
      const double d = 1.0 - p;
      const double shift = std::pow(d, r - 1.0);
      mv.value = empirical_choquet(x, [=](double u) {
        const double v = std::max(u, p);
        return 2.0 / (d * d) * (std::pow(1.0 - v, r) + shift * v);
      });
      break;
    }
  }
  return mv;
}

}  // namespace

MeasureValue compute_single(const MeasureSource& source, MeasureId measure, const ParamSet& params) {
  if (const auto* spec = std::get_if<DistributionSpec>(&source)) return from_distribution(*spec, measure, params);
  return from_sample(std::get<EmpiricalSample>(source), measure, params);
}

}  // namespace egs
