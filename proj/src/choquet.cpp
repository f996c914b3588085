#include "egs/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "egs/error.hpp"
#include "egs/quadrature.hpp"
#include "egs/special.hpp"

namespace egs {
namespace {

double clamp_level(double u) { return std::clamp(u, kClamp, 1.0 - kClamp); }

// Smallest 1-based k with k / n >= u, so that F^{-1} is left-continuous.
std::size_t order_index(double u, std::size_t n) {
  const double nd = static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(u * nd)));
  k = std::min(k, n);
  while (k > 1 && static_cast<double>(k - 1) / nd >= u) --k;
  while (k < n && static_cast<double>(k) / nd < u) ++k;
  return k;
}

}  // namespace

QuantileModel::QuantileModel(Fn eval, TailFlags tails, Fn upper) : eval_(std::move(eval)), tails_(tails) {
  if (!eval_) throw ParameterError("QuantileModel requires an evaluation function");
  if (upper) {
    upper_ = std::move(upper);
  } else {
    upper_ = [e = eval_](double s) { return e(1.0 - s); };
  }
}

QuantileModel QuantileModel::constant(double c) {
  return QuantileModel([c](double) { return c; }, {});
}

QuantileModel QuantileModel::uniform(double a, double b) {
  if (!(b >= a)) throw ParameterError("uniform: require a <= b");
  return QuantileModel([a, b](double u) { return a + (b - a) * u; }, {},
                       [a, b](double s) { return b - (b - a) * s; });
}

QuantileModel QuantileModel::normal(double mean, double sd) {
  if (!(sd > 0.0)) throw ParameterError("normal: standard deviation must be positive");
  return QuantileModel([mean, sd](double u) { return mean + sd * special::normal_quantile(u); },
                       {true, true},
                       [mean, sd](double s) { return mean - sd * special::normal_quantile(s); });
}

QuantileModel QuantileModel::student_t(double dof, double location, double scale) {
  if (!(dof > 0.0)) throw ParameterError("student_t: degrees of freedom must be positive");
  if (!(scale > 0.0)) throw ParameterError("student_t: scale must be positive");
  return QuantileModel(
      [dof, location, scale](double u) { return location + scale * special::student_t_quantile(u, dof); },
      {true, true},
      [dof, location, scale](double s) { return location + scale * special::student_t_upper_quantile(s, dof); });
}

QuantileModel QuantileModel::empirical(std::vector<double> losses) {
  if (losses.empty()) throw ParameterError("empirical: sample is empty");
  std::stable_sort(losses.begin(), losses.end());
  auto data = std::make_shared<const std::vector<double>>(std::move(losses));
  return QuantileModel([data](double u) { return (*data)[order_index(u, data->size()) - 1]; }, {});
}

QuantileModel operator+(const QuantileModel& a, const QuantileModel& b) {
  return QuantileModel([a, b](double u) { return a(u) + b(u); },
                       {a.tails().lower_unbounded || b.tails().lower_unbounded,
                        a.tails().upper_unbounded || b.tails().upper_unbounded},
                       [a, b](double s) { return a.upper_quantile(s) + b.upper_quantile(s); });
}

QuantileModel operator+(const QuantileModel& q, double m) {
  return QuantileModel([q, m](double u) { return q(u) + m; }, q.tails(),
                       [q, m](double s) { return q.upper_quantile(s) + m; });
}

QuantileModel operator*(double c, const QuantileModel& q) {
  if (!(c >= 0.0)) throw ParameterError("quantile scaling requires a non-negative factor");
  if (c == 0.0) return QuantileModel::constant(0.0);
  return QuantileModel([q, c](double u) { return c * q(u); }, q.tails(),
                       [q, c](double s) { return c * q.upper_quantile(s); });
}

WeightFunction::WeightFunction(Fn eval, double support_lo, double support_hi, std::vector<double> kinks)
    : WeightFunction(std::move(eval), support_lo, support_hi, std::move(kinks), 0.0) {
  std::vector<double> pts{lo_};
  pts.insert(pts.end(), kinks_.begin(), kinks_.end());
  pts.push_back(hi_);
  mass_ = quad::integrate([this](double u) { return (*this)(u); }, pts, {1e-13, 4000}).value;
}

WeightFunction::WeightFunction(Fn eval, double support_lo, double support_hi, std::vector<double> kinks,
                               double total_mass)
    : eval_(std::move(eval)), lo_(support_lo), hi_(support_hi), kinks_(std::move(kinks)), mass_(total_mass) {
  if (!eval_) throw ParameterError("WeightFunction requires an evaluation function");
  if (!(0.0 <= lo_ && lo_ < hi_ && hi_ <= 1.0)) {
    throw ParameterError("WeightFunction support must be a non-empty sub-interval of [0, 1]");
  }
  std::erase_if(kinks_, [this](double k) { return !(k > lo_ && k < hi_); });
  std::sort(kinks_.begin(), kinks_.end());
  kinks_.erase(std::unique(kinks_.begin(), kinks_.end()), kinks_.end());
}

double WeightFunction::operator()(double u) const {
  if (u < lo_ || u > hi_) return 0.0;
  return eval_(u);
}

double default_tolerance(const QuantileModel& q) { return q.bounded() ? 1e-10 : 1e-8; }

double choquet_integral(const QuantileModel& q, const WeightFunction& w, double tol) {
  if (!(tol > 0.0)) throw ParameterError("choquet_integral: tolerance must be positive");

  std::vector<double> pts{w.support_lo()};
  pts.insert(pts.end(), w.kinks().begin(), w.kinks().end());
  pts.push_back(w.support_hi());

  const bool lower_tail = q.tails().lower_unbounded && pts.front() == 0.0;
  const bool upper_tail = q.tails().upper_unbounded && pts.back() == 1.0;
  // A single piece touching both singular ends is split so each end gets its own transform.
  if (lower_tail && upper_tail && pts.size() == 2) pts.insert(pts.begin() + 1, 0.5);

  const std::size_t pieces = pts.size() - 1;
  const quad::Options opts{tol / static_cast<double>(pieces), 4000};
  const double t_max = -std::log(kClamp);

  double total = 0.0;
  for (std::size_t i = 0; i < pieces; ++i) {
    const double a = pts[i];
    const double b = pts[i + 1];
    if (i == 0 && lower_tail) {
      // u = e^{-t}
      auto f = [&](double t) {
        const double u = std::exp(-t);
        const double wu = w(u);
        return wu == 0.0 ? 0.0 : q.quantile(u) * wu * u;
      };
      total += quad::integrate(f, -std::log(b), t_max, opts).value;
    } else if (i + 1 == pieces && upper_tail) {
      // u = 1 - e^{-t}; q is evaluated through its upper-tail form.
      auto f = [&](double t) {
        const double s = std::exp(-t);
        const double wu = w(1.0 - s);
        return wu == 0.0 ? 0.0 : q.upper_quantile(s) * wu * s;
      };
      total += quad::integrate(f, -std::log1p(-a), t_max, opts).value;
    } else {
      auto f = [&](double u) {
        const double wu = w(u);
        return wu == 0.0 ? 0.0 : q.quantile(clamp_level(u)) * wu;
      };
      total += quad::integrate(f, a, b, opts).value;
    }
  }
  return total;
}

double choquet_integral(const QuantileModel& q, const WeightFunction& w) {
  return choquet_integral(q, w, default_tolerance(q));
}

double choquet_from_distortion(const QuantileModel& q, const DistortionFunction& h, double tol) {
  if (!h.derivative) throw ParameterError("choquet_from_distortion: distortion derivative is required");
  const WeightFunction w(h.derivative, 0.0, 1.0, h.kinks);
  return choquet_integral(q, w, tol);
}

double empirical_choquet(std::span<const double> sorted_losses, const std::function<double(double)>& h) {
  if (sorted_losses.empty()) throw ParameterError("empirical_choquet: sample is empty");
  const double n = static_cast<double>(sorted_losses.size());
  double total = 0.0;
  double h_prev = h(0.0);
  for (std::size_t i = 0; i < sorted_losses.size(); ++i) {
    const double h_next = h(static_cast<double>(i + 1) / n);
    total += sorted_losses[i] * (h_next - h_prev);
    h_prev = h_next;
  }
  return total;
}

}  // namespace egs
