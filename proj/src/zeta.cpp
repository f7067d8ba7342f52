#include "mfzeta/zeta.hpp"

#include <algorithm>
#include <cmath>

namespace mfzeta {

namespace {

bool can_group(const WeightSystem& ws, const WordFilter& filter) {
  return !ws.count_log_weights().empty() && filter.statistic().composition_measurable();
}

kernels::LevelClasses build_classes(const WeightSystem& ws, const WordFilter& filter, int n, Execution exec,
                                    std::uint64_t budget) {
  if (can_group(ws, filter))
    return exec == Execution::serial ? kernels::grouped_classes_serial(ws, filter, n)
                                     : kernels::grouped_classes_omp(ws, filter, n);
  return exec == Execution::serial ? kernels::enumerated_classes_serial(ws, filter, n, budget)
                                   : kernels::enumerated_classes_omp(ws, filter, n, budget);
}

}  // namespace

LevelTable::LevelTable(const WeightSystem& ws, const WordFilter& filter, int n, Execution exec, std::uint64_t budget)
    : n_(n), grouped_(can_group(ws, filter)), exec_(exec), classes_(build_classes(ws, filter, n, exec, budget)) {}

ExtReal LevelTable::log_sum(double t) const {
  return exec_ == Execution::serial ? kernels::log_sum_serial(classes_, t) : kernels::log_sum_omp(classes_, t);
}

ExtReal LevelTable::root() const {
  if (empty()) return ExtReal::neg_inf();
  // log A(0) >= 0 since every class has multiplicity >= 1, and
  // log A(t) <= log A(0) + t * max log s_w, so the root lies in [0, hi].
  const double at_zero = log_sum(0.0).value();
  const double max_lw = *std::max_element(classes_.log_weight.begin(), classes_.log_weight.end());
  if (!(max_lw < 0.0)) throw NumericError("level table contains a weight s_w >= 1");
  const double hi = at_zero / -max_lw + 1.0;
  return ExtReal(bisect_decreasing([&](double t) { return log_sum(t).value(); }, 0.0, hi, kRootTolerance));
}

LevelSumReport level_sum(const WeightSystem& ws, const WordFilter& filter, double t, int n, Execution exec) {
  if (!std::isfinite(t)) throw ConfigError("exponent must be finite");
  const LevelTable table(ws, filter, n, exec);
  return LevelSumReport{n, t, table.log_sum(t), table.terms(), table.grouped()};
}

LevelSumReport level_sum(const WeightSystem& ws, const WordStatistic& stat, double t, int n, const Target& target,
                         double radius, Execution exec) {
  return level_sum(ws, WordFilter(stat, target, radius), t, n, exec);
}

PartialZeta partial_zeta(const WeightSystem& ws, const WordFilter& filter, double s, int max_len, Execution exec) {
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  if (!std::isfinite(s)) throw ConfigError("s must be finite");
  PartialZeta out;
  out.s = s;
  out.max_len = max_len;
  LogSumExp acc;
  ExtReal previous;
  for (int n = 1; n <= max_len; ++n) {
    const LevelTable table(ws, filter, n, exec);
    const ExtReal term = table.log_sum(s);
    if (term.is_finite()) acc.add(term.value());
    if (n == max_len) {
      out.last_term_log = term;
      out.divergent = term.is_finite() && previous.is_finite() && term.value() >= previous.value();
    }
    previous = term;
  }
  out.log_value = acc.value();
  out.empty = acc.empty();
  out.value = out.empty ? 0.0 : std::exp(out.log_value.value());
  return out;
}

AbscissaEstimate abscissa_estimate(const WeightSystem& ws, const WordFilter& filter, std::span<const int> levels,
                                   Execution exec) {
  if (levels.empty()) throw ConfigError("level ladder is empty");
  AbscissaEstimate out;
  std::vector<double> finite_roots;
  for (int n : levels) {
    if (n < 1) throw ConfigError("levels must be >= 1");
    const LevelTable table(ws, filter, n, exec);
    LevelRoot lr;
    lr.n = n;
    lr.terms = table.terms();
    lr.root = table.root();
    if (lr.root.is_finite()) {
      lr.residual = table.log_sum(lr.root.value()).value();
      finite_roots.push_back(lr.root.value());
      out.value = lr.root;
    }
    out.levels.push_back(lr);
  }
  if (finite_roots.size() >= 2) {
    constexpr double kTol = 1e-9;
    bool up = true;
    bool down = true;
    for (std::size_t k = 1; k < finite_roots.size(); ++k) {
      up = up && finite_roots[k] >= finite_roots[k - 1] - kTol;
      down = down && finite_roots[k] <= finite_roots[k - 1] + kTol;
    }
    out.monotone = up || down;
    out.last_step = std::abs(finite_roots.back() - finite_roots[finite_roots.size() - 2]);
  }
  return out;
}

AbscissaEstimate abscissa_estimate(const WeightSystem& ws, const WordStatistic& stat, const Target& target,
                                   double radius, int n, Execution exec) {
  const int levels[] = {n};
  return abscissa_estimate(ws, WordFilter(stat, target, radius), levels, exec);
}

SweepReport shrinking_sweep(const WeightSystem& ws, const WordStatistic& stat, const Target& target,
                            std::span<const double> radii, std::span<const int> levels, Execution exec) {
  if (radii.empty()) throw ConfigError("radius ladder is empty");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0)) throw ConfigError("sweep radii must be positive");
    if (k > 0 && !(radii[k] < radii[k - 1])) throw ConfigError("sweep radii must be strictly decreasing");
  }
  SweepReport out;
  out.radii.assign(radii.begin(), radii.end());
  for (double r : radii) out.estimates.push_back(abscissa_estimate(ws, WordFilter(stat, target, r), levels, exec));
  for (std::size_t k = 1; k < out.estimates.size(); ++k) {
    const ExtReal prev = out.estimates[k - 1].value;
    const ExtReal cur = out.estimates[k].value;
    if (cur.is_finite() && (prev.is_neg_inf() || cur.value() > prev.value() + 2 * kRootTolerance))
      out.non_increasing = false;
  }
  return out;
}

FixedTargetReport fixed_target_estimate(const WeightSystem& ws, const WordStatistic& stat, const Target& target,
                                        std::span<const int> levels, Execution exec) {
  FixedTargetReport out;
  if (!target.is_empty()) {
    const auto box = target.bounding_box();
    if (stat.is_ratio()) {
      const auto range = ratio_range(stat.model());
      bool meets = target.has_interior();
      for (std::size_t m = 0; m < box.size() && meets; ++m)
        meets = std::max(box[m].lo, range[m].lo) < std::min(box[m].hi, range[m].hi);
      out.interior_condition = meets;
      if (stat.dimension() == 1) out.oracle = legendre_sup(stat.model(), box.front());
    } else {
      out.interior_condition = target.has_interior();
    }
  }
  if (!out.interior_condition)
    out.warnings.emplace_back(
        "target interior does not meet the open ratio range; the abscissa need not equal the spectrum supremum");
  if (target.kind() == Target::Kind::point)
    out.warnings.emplace_back("point target at radius 0: exact ratio matches are non-generic");
  out.estimate = abscissa_estimate(ws, WordFilter(stat, target, 0.0), levels, exec);
  return out;
}

std::vector<int> default_levels(int alphabet) {
  switch (alphabet) {
    case 2:
      return {250, 500, 1000, 2000, 4000};
    case 3:
      return {125, 250, 500, 1000};
    case 4:
      return {50, 100, 200};
    default:
      return {25, 50, 100};
  }
}

}  // namespace mfzeta
