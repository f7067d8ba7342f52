#pragma once

// Multifractal zeta-functions
//
//   zeta(s) = sum over words w with value(w) in B(C, r) of s_w^s
//
// evaluated level by level. A_n(t) is the sum over words of length n. The
// abscissa of convergence is estimated by the root t_n of log A_n(t) = 0:
// A_n(t) behaves like exp(n g(t)) with g strictly decreasing, so the root
// isolates the abscissa with O(log n / n) bias.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfzeta/filter.hpp"
#include "mfzeta/kernels.hpp"
#include "mfzeta/measures.hpp"
#include "mfzeta/numeric.hpp"
#include "mfzeta/weights.hpp"

namespace mfzeta {

/// Word budget for levels that cannot be grouped by composition.
inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 24;

/// Bisection tolerance for per-level roots.
inline constexpr double kRootTolerance = 1e-12;

/// Filtered terms of one level, ready for evaluation at any exponent.
class LevelTable {
 public:
  LevelTable(const WeightSystem& ws, const WordFilter& filter, int n, Execution exec = Execution::parallel,
             std::uint64_t budget = kEnumerationBudget);

  [[nodiscard]] int level() const { return n_; }
  [[nodiscard]] bool grouped() const { return grouped_; }
  [[nodiscard]] bool empty() const { return classes_.size() == 0; }
  [[nodiscard]] std::size_t terms() const { return classes_.size(); }
  [[nodiscard]] const kernels::LevelClasses& classes() const { return classes_; }

  /// log A_n(t); -inf when no word passes the filter.
  [[nodiscard]] ExtReal log_sum(double t) const;

  /// Root of log A_n(t) = 0; -inf for an empty level.
  [[nodiscard]] ExtReal root() const;

 private:
  int n_;
  bool grouped_;
  Execution exec_;
  kernels::LevelClasses classes_;
};

struct LevelSumReport {
  int n = 0;
  double t = 0.0;
  ExtReal log_A;  // -inf: empty filter at this level
  std::size_t terms = 0;
  bool grouped = false;
};

LevelSumReport level_sum(const WeightSystem& ws, const WordFilter& filter, double t, int n,
                         Execution exec = Execution::parallel);
LevelSumReport level_sum(const WeightSystem& ws, const WordStatistic& stat, double t, int n, const Target& target,
                         double radius, Execution exec = Execution::parallel);

struct PartialZeta {
  double s = 0.0;
  int max_len = 0;
  ExtReal log_value;     // log of sum_{n <= max_len} A_n(s)
  double value = 0.0;    // exp(log_value), 0 for an empty series
  ExtReal last_term_log; // log A_{max_len}(s)
  bool empty = true;
  /// Terms at the end of the truncation are not decaying (A_max >= A_{max-1}).
  bool divergent = false;
};

PartialZeta partial_zeta(const WeightSystem& ws, const WordFilter& filter, double s, int max_len,
                         Execution exec = Execution::parallel);

struct LevelRoot {
  int n = 0;
  ExtReal root;          // t_n
  double residual = 0.0; // log A_n(t_n), 0 up to the bisection tolerance
  std::size_t terms = 0;
};

struct AbscissaEstimate {
  /// t_n at the largest level with a non-empty filter; -inf iff every level
  /// was empty.
  ExtReal value;
  std::vector<LevelRoot> levels;
  /// t_n is monotone (in either direction) along the ladder.
  bool monotone = true;
  /// |t_{last} - t_{previous}| over finite roots; 0 with fewer than two.
  double last_step = 0.0;
};

AbscissaEstimate abscissa_estimate(const WeightSystem& ws, const WordFilter& filter, std::span<const int> levels,
                                   Execution exec = Execution::parallel);
AbscissaEstimate abscissa_estimate(const WeightSystem& ws, const WordStatistic& stat, const Target& target,
                                   double radius, int n, Execution exec = Execution::parallel);

struct SweepReport {
  std::vector<double> radii;
  std::vector<AbscissaEstimate> estimates;
  /// Estimates are non-increasing as the radius decreases, within tolerance.
  bool non_increasing = true;
};

/// Estimates at each radius of a strictly decreasing positive ladder.
SweepReport shrinking_sweep(const WeightSystem& ws, const WordStatistic& stat, const Target& target,
                            std::span<const double> radii, std::span<const int> levels,
                            Execution exec = Execution::parallel);

struct FixedTargetReport {
  AbscissaEstimate estimate;
  /// sup over the target of beta*, for ratio statistics with M = 1; -inf when
  /// the target misses the ratio range. Absent for other statistics.
  std::optional<ExtReal> oracle;
  /// Interior of the target meets the open ratio range.
  bool interior_condition = false;
  std::vector<std::string> warnings;
};

/// Abscissa at radius 0 for a fixed target, with the Legendre-sup oracle.
FixedTargetReport fixed_target_estimate(const WeightSystem& ws, const WordStatistic& stat, const Target& target,
                                        std::span<const int> levels, Execution exec = Execution::parallel);

/// Default level ladders: {250, ..., 4000} for N = 2, shorter for larger N.
std::vector<int> default_levels(int alphabet);

}  // namespace mfzeta
