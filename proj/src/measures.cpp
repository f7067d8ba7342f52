#include "mfzeta/measures.hpp"

#include "mfzeta/parallel.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace mfzeta {

namespace {

constexpr double kBetaTol = 1e-13;

// log sum_i exp(a_i + b * log r_i)
double log_pressure_sum(std::span<const double> a, std::span<const double> log_r, double b) {
  LogSumExp acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] + b * log_r[i]);
  return acc.value().value();
}

// a_i = sum_m q_m log p_{m,i}
std::vector<double> potential(const IfsModel& model, std::span<const double> q) {
  if (static_cast<int>(q.size()) != model.dimension())
    throw ConfigError("q has dimension " + std::to_string(q.size()) + ", model has M = " +
                      std::to_string(model.dimension()));
  std::vector<double> a(static_cast<std::size_t>(model.alphabet()), 0.0);
  for (int m = 0; m < model.dimension(); ++m) {
    if (!std::isfinite(q[static_cast<std::size_t>(m)])) throw ConfigError("q must be finite");
    auto lp = model.log_row(m);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += q[static_cast<std::size_t>(m)] * lp[i];
  }
  return a;
}

double solve_beta(const IfsModel& model, std::span<const double> a, std::span<const double> q) {
  auto log_r = model.log_ratios();
  double max_log_p = 0.0;
  for (int m = 0; m < model.dimension(); ++m)
    for (double lp : model.log_row(m)) max_log_p = std::max(max_log_p, std::abs(lp));
  double min_log_r = std::abs(log_r[0]);
  for (double lr : log_r) min_log_r = std::min(min_log_r, std::abs(lr));
  double q1 = 0.0;
  for (double x : q) q1 += std::abs(x);

  auto f = [&](double b) { return log_pressure_sum(a, log_r, b); };
  double bound = q1 * max_log_p / min_log_r + 1.0;
  double lo = -bound;
  double hi = bound;
  for (int i = 0; i < 64 && f(lo) < 0.0; ++i) lo *= 2.0;
  for (int i = 0; i < 64 && f(hi) > 0.0; ++i) hi *= 2.0;
  if (f(lo) < 0.0 || f(hi) > 0.0) throw NumericError("beta: pressure root bracket expansion failed");
  return bisect_decreasing(f, lo, hi, kBetaTol);
}

std::vector<double> alpha_at(const IfsModel& model, std::span<const double> a, double b) {
  auto log_r = model.log_ratios();
  std::vector<double> logw(a.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    logw[i] = a[i] + b * log_r[i];
    mx = std::max(mx, logw[i]);
  }
  double den = 0.0;
  std::vector<double> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    w[i] = std::exp(logw[i] - mx);
    den += w[i] * log_r[i];
  }
  std::vector<double> out(static_cast<std::size_t>(model.dimension()));
  for (int m = 0; m < model.dimension(); ++m) {
    auto lp = model.log_row(m);
    double num = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) num += w[i] * lp[i];
    out[static_cast<std::size_t>(m)] = num / den;
  }
  return out;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double legendre_objective(const IfsModel& model, std::span<const double> a, std::span<const double> q) {
  return dot(a, q) + beta(model, q);
}

LegendreValue legendre_scalar(const IfsModel& model, double a) {
  const Interval range = ratio_range(model).front();
  const double tol = 1e-12 * std::max(1.0, std::abs(a));
  LegendreValue out;
  if (a < range.lo - tol || a > range.hi + tol) return out;

  auto at_q = [&](double q) {
    out.value = ExtReal(q * a + beta(model, q));
    out.argmin_q = {q};
    return out;
  };

  const bool at_lo = std::abs(a - range.lo) <= tol;
  const bool at_hi = std::abs(a - range.hi) <= tol;
  if (at_lo || at_hi) {
    out.boundary = true;
    // alpha(q) decreases in q: the lower endpoint is reached as q -> +inf.
    return at_q(at_lo ? kLegendreQCap : -kLegendreQCap);
  }

  // alpha(q) - a is decreasing in q; bracket the root by doubling.
  auto g = [&](double q) { return alpha(model, q) - a; };
  double lo = -1.0;
  double hi = 1.0;
  constexpr double kExpandLimit = 1e6;
  while (g(lo) < 0.0 && lo > -kExpandLimit) lo *= 2.0;
  while (g(hi) > 0.0 && hi < kExpandLimit) hi *= 2.0;
  if (g(lo) < 0.0 || g(hi) > 0.0) {
    // Numerically indistinguishable from an endpoint.
    out.boundary = true;
    return at_q(g(lo) < 0.0 ? lo : hi);
  }
  const double q = bisect_decreasing(g, lo, hi, 1e-13 * std::max(1.0, hi - lo));
  return at_q(q);
}

LegendreValue legendre_vector(const IfsModel& model, std::span<const double> a) {
  const auto box = ratio_range(model);
  const int dim = model.dimension();
  LegendreValue out;
  for (int m = 0; m < dim; ++m) {
    const double x = a[static_cast<std::size_t>(m)];
    const double tol = 1e-12 * std::max(1.0, std::abs(x));
    if (x < box[static_cast<std::size_t>(m)].lo - tol || x > box[static_cast<std::size_t>(m)].hi + tol) return out;
  }

  constexpr double kQ = 30.0;
  constexpr int kGrid = 21;
  std::vector<double> q(static_cast<std::size_t>(dim), -kQ);
  std::vector<double> best_q = q;
  double best = legendre_objective(model, a, q);
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  for (;;) {
    int pos = dim - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == kGrid - 1) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int m = 0; m < dim; ++m)
      q[static_cast<std::size_t>(m)] = -kQ + 2.0 * kQ * idx[static_cast<std::size_t>(m)] / (kGrid - 1);
    const double v = legendre_objective(model, a, q);
    if (v < best) {
      best = v;
      best_q = q;
    }
  }

  // Coordinate descent: d/dq_m of the objective is a_m - alpha_m(q), which is
  // non-decreasing in q_m by convexity of beta.
  q = best_q;
  for (int sweep = 0; sweep < 500; ++sweep) {
    double moved = 0.0;
    for (int m = 0; m < dim; ++m) {
      auto grad = [&](double qm) {
        std::vector<double> trial = q;
        trial[static_cast<std::size_t>(m)] = qm;
        return a[static_cast<std::size_t>(m)] - alpha(model, trial)[static_cast<std::size_t>(m)];
      };
      const double old = q[static_cast<std::size_t>(m)];
      double next;
      if (grad(-kQ) >= 0.0)
        next = -kQ;
      else if (grad(kQ) <= 0.0)
        next = kQ;
      else
        next = bisect_decreasing([&](double x) { return -grad(x); }, -kQ, kQ, 1e-12);
      q[static_cast<std::size_t>(m)] = next;
      moved = std::max(moved, std::abs(next - old));
    }
    if (moved < 1e-11) break;
  }

  const auto grad_final = alpha(model, q);
  for (int m = 0; m < dim; ++m) {
    const bool pinned = std::abs(std::abs(q[static_cast<std::size_t>(m)]) - kQ) < 1e-9;
    if (pinned && std::abs(a[static_cast<std::size_t>(m)] - grad_final[static_cast<std::size_t>(m)]) > 1e-6)
      out.boundary = true;
  }
  out.value = ExtReal(legendre_objective(model, a, q));
  out.argmin_q = q;
  return out;
}

}  // namespace

IfsModel::IfsModel(std::vector<double> ratios, std::vector<std::vector<double>> rows)
    : ratios_(std::move(ratios)), rows_(std::move(rows)) {
  check_alphabet(static_cast<int>(ratios_.size()));
  if (rows_.empty()) throw ConfigError("model needs at least one probability row");
  for (double r : ratios_) {
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("contraction ratios must lie in (0, 1)");
    log_ratios_.push_back(std::log(r));
  }
  for (const auto& row : rows_) {
    if (row.size() != ratios_.size())
      throw ConfigError("probability row has " + std::to_string(row.size()) + " entries, expected " +
                        std::to_string(ratios_.size()));
    double sum = 0.0;
    std::vector<double> lp;
    for (double p : row) {
      if (!(p > 0.0 && p < 1.0)) throw ConfigError("probabilities must lie in (0, 1)");
      sum += p;
      lp.push_back(std::log(p));
    }
    if (std::abs(sum - 1.0) > 1e-12) throw ConfigError("probability row does not sum to 1");
    log_rows_.push_back(std::move(lp));
  }
}

bool IfsModel::is_degenerate(double tol) const {
  for (const auto& iv : ratio_range(*this))
    if (iv.width() > tol) return false;
  return true;
}

double beta(const IfsModel& model, std::span<const double> q) {
  const auto a = potential(model, q);
  return solve_beta(model, a, q);
}

double beta(const IfsModel& model, double q) { return beta(model, std::span<const double>(&q, 1)); }

std::vector<double> alpha(const IfsModel& model, std::span<const double> q) {
  const auto a = potential(model, q);
  return alpha_at(model, a, solve_beta(model, a, q));
}

double alpha(const IfsModel& model, double q) { return alpha(model, std::span<const double>(&q, 1)).front(); }

std::vector<Interval> ratio_range(const IfsModel& model) {
  std::vector<Interval> out;
  auto log_r = model.log_ratios();
  for (int m = 0; m < model.dimension(); ++m) {
    auto lp = model.log_row(m);
    Interval iv{lp[0] / log_r[0], lp[0] / log_r[0]};
    for (std::size_t i = 1; i < lp.size(); ++i) {
      const double x = lp[i] / log_r[i];
      iv.lo = std::min(iv.lo, x);
      iv.hi = std::max(iv.hi, x);
    }
    out.push_back(iv);
  }
  return out;
}

LegendreValue legendre(const IfsModel& model, std::span<const double> a) {
  if (static_cast<int>(a.size()) != model.dimension()) throw ConfigError("alpha has the wrong dimension");
  for (double x : a)
    if (!std::isfinite(x)) throw ConfigError("alpha must be finite");
  if (model.dimension() == 1) return legendre_scalar(model, a[0]);
  return legendre_vector(model, a);
}

LegendreValue legendre(const IfsModel& model, double a) { return legendre(model, std::span<const double>(&a, 1)); }

ExtReal legendre_sup(const IfsModel& model, Interval interval) {
  if (model.dimension() != 1) throw ConfigError("legendre_sup needs a model with M = 1");
  if (interval.lo > interval.hi) throw ConfigError("empty interval");
  const Interval range = ratio_range(model).front();
  const double lo = std::max(interval.lo, range.lo);
  const double hi = std::min(interval.hi, range.hi);
  if (lo > hi) return ExtReal::neg_inf();
  if (lo == hi) return legendre(model, lo).value;

  constexpr int kGrid = 201;
  std::vector<double> xs(kGrid);
  std::vector<double> fs(kGrid);
  for (int k = 0; k < kGrid; ++k) {
    xs[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (kGrid - 1);
    fs[static_cast<std::size_t>(k)] = legendre(model, xs[static_cast<std::size_t>(k)]).value.value();
  }
  const auto best = static_cast<std::size_t>(std::max_element(fs.begin(), fs.end()) - fs.begin());
  if (best == 0 || best == kGrid - 1 || !(fs[best] > fs[best - 1] && fs[best] > fs[best + 1])) return ExtReal(fs[best]);

  struct Ctx {
    const IfsModel* model;
  } ctx{&model};
  gsl_function fn;
  fn.function = [](double x, void* p) {
    return -legendre(*static_cast<Ctx*>(p)->model, x).value.value();
  };
  fn.params = &ctx;

  gsl_error_handler_t* old = gsl_set_error_handler_off();
  std::unique_ptr<gsl_min_fminimizer, decltype(&gsl_min_fminimizer_free)> minimizer(
      gsl_min_fminimizer_alloc(gsl_min_fminimizer_goldensection), &gsl_min_fminimizer_free);
  double result = fs[best];
  if (gsl_min_fminimizer_set_with_values(minimizer.get(), &fn, xs[best], -fs[best], xs[best - 1], -fs[best - 1],
                                         xs[best + 1], -fs[best + 1]) == GSL_SUCCESS) {
    for (int iter = 0; iter < 200; ++iter) {
      if (gsl_min_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
      const double a = gsl_min_fminimizer_x_lower(minimizer.get());
      const double b = gsl_min_fminimizer_x_upper(minimizer.get());
      if (gsl_min_test_interval(a, b, 1e-13, 0.0) == GSL_SUCCESS) break;
    }
    result = std::max(result, -gsl_min_fminimizer_f_minimum(minimizer.get()));
  }
  gsl_set_error_handler(old);
  return ExtReal(result);
}

std::vector<SpectrumSample> spectrum_curve(const IfsModel& model, std::span<const std::vector<double>> qs,
                                           Execution exec) {
  std::vector<SpectrumSample> out(qs.size());
  auto eval = [&](std::size_t k) {
    SpectrumSample s;
    s.q = qs[k];
    const auto a = potential(model, s.q);
    s.beta = solve_beta(model, a, s.q);
    s.alpha = alpha_at(model, a, s.beta);
    s.f = dot(s.q, s.alpha) + s.beta;
    out[k] = std::move(s);
  };
  const auto n = static_cast<std::ptrdiff_t>(qs.size());
  if (exec == Execution::serial) {
    for (std::ptrdiff_t k = 0; k < n; ++k) eval(static_cast<std::size_t>(k));
  } else {
    omp_for(n, [&](std::ptrdiff_t k) { eval(static_cast<std::size_t>(k)); });
  }
  return out;
}

double similarity_dimension(std::span<const double> ratios) {
  std::vector<double> log_r;
  for (double r : ratios) log_r.push_back(std::log(r));
  std::vector<double> zeros(log_r.size(), 0.0);
  auto f = [&](double t) { return log_pressure_sum(zeros, log_r, t); };
  double hi = 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  return bisect_decreasing(f, 0.0, hi, kBetaTol);
}

}  // namespace mfzeta
