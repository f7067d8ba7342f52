#pragma once

// Symbolic coarse spectra. The stopping set at scale delta is the antichain
// of words w with s_w <= delta < s_parent(w); N_delta counts the stopping
// words whose statistic lies in B(C, r).

#include <cstdint>
#include <span>
#include <vector>

#include "mfzeta/filter.hpp"
#include "mfzeta/numeric.hpp"
#include "mfzeta/symbolic.hpp"
#include "mfzeta/weights.hpp"

namespace mfzeta {

/// Default smallest admissible log delta: 40 log s_min.
double default_log_floor(const WeightSystem& ws);

/// Stopping words at scale delta in depth-first lexicographic order.
/// Throws ConfigError unless 0 < delta < 1 and BudgetError when
/// log delta < log_floor.
std::vector<Word> stopping_words(const WeightSystem& ws, double delta, double log_floor);
std::vector<Word> stopping_words(const WeightSystem& ws, double delta);

struct CoarseCount {
  double delta = 0.0;
  std::uint64_t count = 0;  // stopping words passing the filter
  std::uint64_t total = 0;  // stopping-set size
  double radius = 0.0;
};

CoarseCount coarse_count(const WeightSystem& ws, const WordFilter& filter, double delta,
                         Execution exec = Execution::parallel);
CoarseCount coarse_count(const WeightSystem& ws, const WordStatistic& stat, double delta, const Target& target,
                         double radius, Execution exec = Execution::parallel);

struct CoarseRow {
  CoarseCount count;
  double neg_log_delta = 0.0;
  ExtReal log_count;   // -inf for a zero count
  double residual = 0.0;  // log count minus the fitted line; 0 for zero counts
};

struct CoarseSpectrum {
  /// Least-squares slope of log N_delta against -log delta over the scales
  /// with non-zero counts; -inf when every count is zero.
  ExtReal slope;
  double intercept = 0.0;
  std::size_t fitted = 0;  // scales entering the fit
  std::vector<CoarseRow> rows;
};

/// `deltas` must hold at least 3 strictly decreasing scales in (0, 1).
CoarseSpectrum coarse_spectrum_estimate(const WeightSystem& ws, const WordFilter& filter,
                                        std::span<const double> deltas, Execution exec = Execution::parallel);

}  // namespace mfzeta
