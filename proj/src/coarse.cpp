#include "mfzeta/coarse.hpp"

#include <algorithm>
#include <cmath>

#include "mfzeta/kernels.hpp"

namespace mfzeta {

double default_log_floor(const WeightSystem& ws) { return 40.0 * std::log(ws.constants().s_min); }

std::vector<Word> stopping_words(const WeightSystem& ws, double delta, double log_floor) {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (std::log(delta) < log_floor) throw BudgetError("delta is below the configured floor");
  std::vector<Word> out;
  kernels::detail::traverse_stopping(ws, {}, 0.0, std::log(delta),
                                     [&](std::span<const Symbol> path, std::span<const int>, double) {
                                       out.emplace_back(std::vector<Symbol>(path.begin(), path.end()));
                                     });
  return out;
}

std::vector<Word> stopping_words(const WeightSystem& ws, double delta) {
  return stopping_words(ws, delta, default_log_floor(ws));
}

CoarseCount coarse_count(const WeightSystem& ws, const WordFilter& filter, double delta, Execution exec) {
  const double floor = default_log_floor(ws);
  const auto c = exec == Execution::serial ? kernels::coarse_count_serial(ws, filter, delta, floor)
                                           : kernels::coarse_count_omp(ws, filter, delta, floor);
  return CoarseCount{delta, c.accepted, c.total, filter.radius()};
}

CoarseCount coarse_count(const WeightSystem& ws, const WordStatistic& stat, double delta, const Target& target,
                         double radius, Execution exec) {
  return coarse_count(ws, WordFilter(stat, target, radius), delta, exec);
}

CoarseSpectrum coarse_spectrum_estimate(const WeightSystem& ws, const WordFilter& filter,
                                        std::span<const double> deltas, Execution exec) {
  if (deltas.size() < 3) throw ConfigError("coarse ladder needs at least 3 scales");
  for (std::size_t k = 1; k < deltas.size(); ++k)
    if (!(deltas[k] < deltas[k - 1])) throw ConfigError("coarse scales must be strictly decreasing");

  CoarseSpectrum out;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double delta : deltas) {
    CoarseRow row;
    row.count = coarse_count(ws, filter, delta, exec);
    row.neg_log_delta = -std::log(delta);
    if (row.count.count > 0) {
      const double y = std::log(static_cast<double>(row.count.count));
      row.log_count = ExtReal(y);
      sx += row.neg_log_delta;
      sy += y;
      sxx += row.neg_log_delta * row.neg_log_delta;
      sxy += row.neg_log_delta * y;
      ++out.fitted;
    }
    out.rows.push_back(row);
  }
  if (out.fitted == 0) return out;
  const auto k = static_cast<double>(out.fitted);
  if (out.fitted == 1) {
    // A single non-empty scale: the ratio log N / -log delta.
    out.slope = ExtReal(sy / sx);
  } else {
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    out.slope = ExtReal(slope);
    out.intercept = (sy - slope * sx) / k;
  }
  for (auto& row : out.rows)
    if (row.log_count.is_finite())
      row.residual = row.log_count.value() - (out.intercept + out.slope.value() * row.neg_log_delta);
  return out;
}

}  // namespace mfzeta
