#pragma once

// Variational oracle: the supremum of the dimension functional
//
//   D(mu) = -h(mu) / int Lambda dmu,   int Lambda dmu = sum_j pi_j log r_j,
//
// over Bernoulli or memory-1 Markov measures mu whose image U mu lies in
// B(C, r). U mu is the ratio vector (sum_j pi_j log p_{m,j}) / (sum_j pi_j
// log r_j) for ratio statistics and the expectation of the k-gram table for
// Birkhoff statistics.

#include <cstdint>
#include <span>
#include <vector>

#include "mfzeta/numeric.hpp"
#include "mfzeta/statistics.hpp"
#include "mfzeta/targets.hpp"
#include "mfzeta/weights.hpp"

namespace mfzeta {

/// Product measure of one probability vector.
class BernoulliMeasure {
 public:
  /// Entries >= 0 summing to 1 within 1e-12.
  explicit BernoulliMeasure(std::vector<double> pi);

  [[nodiscard]] int alphabet() const { return static_cast<int>(pi_.size()); }
  [[nodiscard]] std::span<const double> pi() const { return pi_; }
  /// -sum pi_j log pi_j with 0 log 0 = 0.
  [[nodiscard]] double entropy() const;

 private:
  std::vector<double> pi_;
};

/// Stationary memory-1 Markov measure.
class MarkovMeasure {
 public:
  /// Row-stochastic N x N matrix; the stationary vector is computed. For
  /// reducible chains the minimum-norm stationary vector is used.
  explicit MarkovMeasure(std::vector<std::vector<double>> transition);

  [[nodiscard]] int alphabet() const { return static_cast<int>(stationary_.size()); }
  [[nodiscard]] const std::vector<std::vector<double>>& transition() const { return transition_; }
  [[nodiscard]] std::span<const double> stationary() const { return stationary_; }
  /// -sum_a pi_a sum_b P_ab log P_ab.
  [[nodiscard]] double entropy() const;

 private:
  std::vector<std::vector<double>> transition_;
  std::vector<double> stationary_;
};

/// -h / sum_j pi_j log r_j; >= 0.
double dimension_functional(const BernoulliMeasure& m, std::span<const double> ratios);
double dimension_functional(const MarkovMeasure& m, std::span<const double> ratios);

/// U mu for the statistic.
std::vector<double> measure_image(const WordStatistic& stat, const BernoulliMeasure& m);
std::vector<double> measure_image(const WordStatistic& stat, const MarkovMeasure& m);

enum class MeasureFamily { bernoulli, markov1 };

/// Constraint slack accepted on dist(U mu, C) <= r.
inline constexpr double kFeasibilityTolerance = 1e-9;

struct VariationalOptions {
  MeasureFamily family = MeasureFamily::bernoulli;
  std::uint64_t seed = 0;  // perturbed restarts of the local refinement
  int restarts = 4;
  Execution exec = Execution::parallel;
};

struct VariationalResult {
  /// -inf when no measure in the family is feasible.
  ExtReal value;
  bool feasible = false;
  MeasureFamily family = MeasureFamily::bernoulli;
  /// Maximizer (or, when infeasible, the measure closest to the target).
  std::vector<double> stationary;
  std::vector<std::vector<double>> transition;  // empty for Bernoulli
  std::vector<double> image;
  double distance = 0.0;  // dist(image, C)
  std::size_t grid_points = 0;
};

/// Grid over the family (simplex resolution 1e-3 for N = 2, 1e-2 for N = 3,
/// coarser beyond; Markov rows at 1e-2 for N = 2 and 1e-1 for N = 3) and
/// Nelder-Mead refinement from the best feasible grid point. The Markov
/// family supports N <= 3.
VariationalResult constrained_sup(const SimilarityWeights& ws, const WordStatistic& stat, const Target& target,
                                  double radius, const VariationalOptions& options = {});

}  // namespace mfzeta
