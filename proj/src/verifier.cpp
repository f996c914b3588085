#include "egs/verifier.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "egs/error.hpp"
#include "egs/estimator.hpp"
#include "egs/rng.hpp"

namespace egs {
namespace {

using Engine = std::mt19937_64;

constexpr std::array<std::string_view, 6> kAxiomNames = {
    "monotonicity", "translation", "homogeneity", "subadditivity", "comonotone_additivity", "egs_dominates_es"};

enum class Family { Normal, LognormalTail, TwoPoint, Mixture };

constexpr std::array<std::string_view, 4> kFamilyNames = {"normal", "lognormal_tail", "two_point", "mixture"};

struct Draw {
  Family family;
  double loc;
  double scale;
  double prob;  // two-point probability of the high value
  double gap;   // two-point distance between the values
};

Draw random_draw(Engine& g) {
  Draw d{};
  d.family = static_cast<Family>(rng::uniform_int(g, 0, 3));
  d.loc = 2.0 * rng::uniform(g) - 1.0;
  d.scale = 0.1 + 2.9 * rng::uniform(g);
  d.prob = 0.01 + 0.5 * rng::uniform(g);
  d.gap = 0.5 + 10.0 * rng::uniform(g);
  return d;
}

double draw_value(Engine& g, Family family, const Draw& d) {
  switch (family) {
    case Family::Normal:
      return d.loc + d.scale * rng::standard_normal(g);
    case Family::LognormalTail:
      return d.loc + std::exp(0.2 + 1.3 * d.scale / 3.0 * rng::standard_normal(g)) - 1.0;
    case Family::TwoPoint:
      return d.loc + (rng::uniform(g) < d.prob ? d.gap : 0.0);
    case Family::Mixture:
      return draw_value(g, static_cast<Family>(rng::uniform_int(g, 0, 2)), d);
  }
  return 0.0;
}

std::vector<double> draw_vector(Engine& g, std::size_t n, const Draw& d) {
  std::vector<double> v(n);
  for (double& x : v) x = draw_value(g, d.family, d);
  return v;
}

std::vector<double> add(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

VerifierResult start(const AxiomCase& c) {
  VerifierResult r;
  r.axiom_case = c;
  return r;
}

// Accumulates trial outcomes; `excess` is the violation amount minus the scaled tolerance.
struct Tally {
  VerifierResult result;

  void record(std::size_t trial, double amount, double reference, const std::string& detail) {
    ++result.trials_run;
    const double excess = amount - result.axiom_case.tolerance * (1.0 + std::fabs(reference));
    if (!(excess > 0.0) && !std::isnan(amount)) return;
    ++result.violations;
    if (result.violations == 1 || excess > result.worst_excess || std::isnan(excess)) {
      result.worst_excess = excess;
      result.worst_case = "trial " + std::to_string(trial) + ": " + detail + ", excess " + fmt(excess);
    }
  }

  VerifierResult finish() {
    result.passed = result.violations == 0;
    return std::move(result);
  }
};

// Second position drawn jointly with x on the same scenario rows.
std::vector<double> joint_partner(Engine& g, std::span<const double> x, std::string& mode) {
  const std::size_t n = x.size();
  switch (rng::uniform_int(g, 0, 3)) {
    case 0: {
      mode = "independent";
      return draw_vector(g, n, random_draw(g));
    }
    case 1: {
      mode = "linear";
      const double rho = 2.0 * rng::uniform(g) - 1.0;
      const double noise = std::sqrt(1.0 - rho * rho);
      const Draw d = random_draw(g);
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = rho * x[i] + noise * draw_value(g, d.family, d);
      return y;
    }
    case 2: {
      mode = "hedge";
      const double shift = rng::standard_normal(g);
      std::vector<double> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = shift - x[i] + 0.1 * rng::standard_normal(g);
      return y;
    }
    default: {
      // Disjoint tail events: y is large exactly where x is small.
      mode = "disjoint_tail";
      const double gap = 0.5 + 5.0 * rng::uniform(g);
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
      const std::size_t hits = 1 + rng::uniform_int(g, 0, n / 4);
      std::vector<double> y(n, 0.0);
      for (std::size_t i = 0; i < hits; ++i) y[order[i]] = gap;
      return y;
    }
  }
}

void run_trial(Axiom axiom, std::size_t trial, const AxiomCase& c, const ParamSet& params, Tally& tally) {
  Engine g = rng::stream(c.seed, trial);
  const std::size_t n = rng::uniform_int(g, 50, 500);
  const Draw d = random_draw(g);
  const std::vector<double> x = draw_vector(g, n, d);
  const std::string base = "n=" + std::to_string(n) + " family=" + std::string(kFamilyNames[static_cast<int>(d.family)]);
  const double ex = egs_hat(x, params);

  switch (axiom) {
    case Axiom::Monotonicity: {
      std::vector<double> y = x;
      const double size = 0.1 + 3.0 * rng::uniform(g);
      for (double& v : y)
        if (rng::uniform(g) < 0.5) v += size * std::fabs(rng::standard_normal(g));
      const double ey = egs_hat(y, params);
      tally.record(trial, ex - ey, ey, base + " egs(X)=" + fmt(ex) + " egs(Y)=" + fmt(ey));
      break;
    }
    case Axiom::Translation: {
      const double m = 20.0 * rng::uniform(g) - 10.0;
      std::vector<double> y = x;
      for (double& v : y) v += m;
      const double ey = egs_hat(y, params);
      tally.record(trial, std::fabs(ey - ex - m), ex + m, base + " m=" + fmt(m) + " gap=" + fmt(ey - ex - m));
      break;
    }
    case Axiom::Homogeneity: {
      const double k = 0.01 + 9.99 * rng::uniform(g);
      std::vector<double> y = x;
      for (double& v : y) v *= k;
      const double ey = egs_hat(y, params);
      tally.record(trial, std::fabs(ey - k * ex), k * ex, base + " c=" + fmt(k) + " gap=" + fmt(ey - k * ex));
      break;
    }
    case Axiom::Subadditivity: {
      std::string mode;
      const std::vector<double> y = joint_partner(g, x, mode);
      const double ey = egs_hat(y, params);
      const double es = egs_hat(add(x, y), params);
      tally.record(trial, es - (ex + ey), ex + ey,
                   base + " partner=" + mode + " egs(X+Y)=" + fmt(es) + " egs(X)+egs(Y)=" + fmt(ex + ey));
      break;
    }
    case Axiom::ComonotoneAdditivity: {
      std::vector<double> xs = x;
      std::vector<double> ys = draw_vector(g, n, random_draw(g));
      std::sort(xs.begin(), xs.end());
      std::sort(ys.begin(), ys.end());
      // Same scenario relabelling for both keeps the pair co-monotone.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::shuffle(perm.begin(), perm.end(), g);
      std::vector<double> xp(n), yp(n);
      for (std::size_t i = 0; i < n; ++i) {
        xp[i] = xs[perm[i]];
        yp[i] = ys[perm[i]];
      }
      const double a = egs_hat(xp, params);
      const double b = egs_hat(yp, params);
      const double s = egs_hat(add(xp, yp), params);
      tally.record(trial, std::fabs(s - a - b), a + b, base + " gap=" + fmt(s - a - b));
      break;
    }
    case Axiom::EgsDominatesEs: {
      const double es = egs_hat(x, ParamSet{params.p, params.r, 0.0});
      tally.record(trial, es - ex, es, base + " es=" + fmt(es) + " egs=" + fmt(ex));
      break;
    }
  }
}

// egs_hat of -1 on the first k of n rows and 0 elsewhere, via prefix sums of the weights.
struct PrefixWeights {
  std::vector<double> cumulative;  // cumulative[k] = w_1 + ... + w_k

  PrefixWeights(std::size_t n, const ParamSet& params) : cumulative(n + 1, 0.0) {
    const EstimatorWeights w = estimator_weights(n, params);
    for (std::size_t i = 0; i < n; ++i) cumulative[i + 1] = cumulative[i] + w.weights[i];
  }
};

std::optional<Counterexample> check_pair(const std::vector<double>& x, const std::vector<double>& y,
                                         const ParamSet& params, double tolerance) {
  const double lhs = egs_hat(add(x, y), params);
  const double rhs = egs_hat(x, params) + egs_hat(y, params);
  if (lhs - rhs > tolerance * (1.0 + std::fabs(rhs))) return Counterexample{x, y, lhs, rhs};
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Axiom a) { return kAxiomNames[static_cast<std::size_t>(a)]; }

Axiom parse_axiom(std::string_view name) {
  for (std::size_t i = 0; i < kAxiomNames.size(); ++i)
    if (kAxiomNames[i] == name) return static_cast<Axiom>(i);
  throw ParameterError("unknown axiom '" + std::string(name) + "'");
}

VerifierResult verify_axiom(const AxiomCase& axiom_case, const ParamSet& params) {
  params.validate();
  if (axiom_case.trials < 1) throw ParameterError("trial count must be >= 1");
  Tally tally{start(axiom_case)};
  for (std::size_t t = 0; t < axiom_case.trials; ++t) run_trial(axiom_case.axiom, t, axiom_case, params, tally);
  return tally.finish();
}

VerifierResult find_subadditivity_violation(const ParamSet& params, std::size_t budget, std::uint64_t seed,
                                            SearchStrategy strategy, double tolerance) {
  params.validate();
  VerifierResult result = start(AxiomCase{Axiom::Subadditivity, budget, seed, tolerance});
  auto found = [&](Counterexample ce, const std::string& how) {
    result.violations = 1;
    result.worst_excess = ce.lhs - ce.rhs - tolerance * (1.0 + std::fabs(ce.rhs));
    result.worst_case = how + ", egs(X+Y)=" + fmt(ce.lhs) + " egs(X)+egs(Y)=" + fmt(ce.rhs);
    result.counterexample = std::move(ce);
    result.passed = false;
    return result;
  };

  if (strategy == SearchStrategy::ConstructiveThenRandom) {
    // X = -1 on rows [0, m), Y = -1 on rows [m, 2m). egs(X) = egs(Y) = -S_m, egs(X+Y) = -S_2m.
    for (std::size_t n = 2; result.trials_run < budget; ++n) {
      const PrefixWeights pw(n, params);
      for (std::size_t m = 1; 2 * m <= n && result.trials_run < budget; ++m) {
        ++result.trials_run;
        const double gap = 2.0 * pw.cumulative[m] - pw.cumulative[2 * m];
        if (!(gap > tolerance * (1.0 + 2.0 * std::fabs(pw.cumulative[m])))) continue;
        std::vector<double> x(n, 0.0), y(n, 0.0);
        std::fill_n(x.begin(), m, -1.0);
        std::fill_n(y.begin() + static_cast<std::ptrdiff_t>(m), m, -1.0);
        if (auto ce = check_pair(x, y, params, tolerance))
          return found(std::move(*ce), "two-point disjoint n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
      // Past the largest useful grid the family is exhausted.
      if (n > 100000) break;
    }
  }

  for (std::size_t t = 0; result.trials_run < budget; ++t) {
    ++result.trials_run;
    Engine g = rng::stream(seed, t);
    const std::size_t n = rng::uniform_int(g, 50, 500);
    const std::vector<double> x = draw_vector(g, n, random_draw(g));
    std::string mode;
    const std::vector<double> y = joint_partner(g, x, mode);
    if (auto ce = check_pair(x, y, params, tolerance))
      return found(std::move(*ce), "random trial " + std::to_string(t) + " n=" + std::to_string(n) + " partner=" + mode);
  }
  result.passed = true;
  return result;
}

VerifierResult verify_cx_spot(const ParamSet& params, std::size_t budget, std::uint64_t seed, double tolerance) {
  params.validate();
  Tally tally{start(AxiomCase{Axiom::Monotonicity, budget, seed, tolerance})};
  const auto h = [r = params.r](double u) { return h_r(u, r); };
  const bool coherent = params.coherent();

  for (std::size_t t = 0; t < budget; ++t) {
    Engine g = rng::stream(seed, t);
    const std::size_t n = rng::uniform_int(g, 50, 250);
    std::vector<double> x = draw_vector(g, n, random_draw(g));
    std::vector<double> y;
    std::string kind;
    const auto choice = rng::uniform_int(g, 0, 2);
    if (choice == 0) {
      // Each row splits into two equally likely rows, +a and -a around it.
      kind = "two_point_noise";
      std::vector<double> xd;
      xd.reserve(2 * n);
      y.reserve(2 * n);
      for (double v : x) {
        const double a = std::fabs(rng::standard_normal(g));
        xd.insert(xd.end(), {v, v});
        y.insert(y.end(), {v + a, v - a});
      }
      x = std::move(xd);
    } else if (choice == 1) {
      kind = "scale_about_mean";
      const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
      const double c = 1.0 + 2.0 * rng::uniform(g);
      y = x;
      for (double& v : y) v = mean + c * (v - mean);
    } else {
      kind = "degenerate";
      y = x;
    }

    std::vector<double> xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const double gx = empirical_choquet(xs, h);
    const double gy = empirical_choquet(ys, h);
    double amount = gx - gy;
    double reference = gy;
    std::string detail = kind + " egini(X)=" + fmt(gx) + " egini(Y)=" + fmt(gy);
    if (kind == "degenerate") amount = std::fabs(gx - gy);
    if (coherent) {
      const double ex = egs_hat(xs, params);
      const double ey = egs_hat(ys, params);
      const double egs_amount = kind == "degenerate" ? std::fabs(ex - ey) : ex - ey;
      if (egs_amount > amount) {
        amount = egs_amount;
        reference = ey;
        detail = kind + " egs(X)=" + fmt(ex) + " egs(Y)=" + fmt(ey);
      }
    }
    tally.record(t, amount, reference, detail);
  }
  return tally.finish();
}

}  // namespace egs
