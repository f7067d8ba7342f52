#pragma once

// Self-similar measures given by contraction ratios and one or more
// probability vectors, with the analytic multifractal spectrum: the
// exponent beta(q) solving sum_i prod_m p_{m,i}^{q_m} r_i^beta = 1, its
// negative gradient alpha(q) and the Legendre transform beta*.

#include <span>
#include <vector>

#include "mfzeta/numeric.hpp"
#include "mfzeta/weights.hpp"

namespace mfzeta {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }
  [[nodiscard]] double width() const { return hi - lo; }
};

/// N contraction ratios and M stacked probability rows over the same alphabet.
class IfsModel {
 public:
  /// Throws ConfigError unless every r_i and p_{m,i} lies in (0, 1) and each
  /// row sums to 1 within 1e-12.
  IfsModel(std::vector<double> ratios, std::vector<std::vector<double>> rows);

  [[nodiscard]] int alphabet() const { return static_cast<int>(ratios_.size()); }
  [[nodiscard]] int dimension() const { return static_cast<int>(rows_.size()); }
  [[nodiscard]] std::span<const double> ratios() const { return ratios_; }
  [[nodiscard]] std::span<const double> log_ratios() const { return log_ratios_; }
  [[nodiscard]] std::span<const double> row(int m) const { return rows_[static_cast<std::size_t>(m)]; }
  [[nodiscard]] std::span<const double> log_row(int m) const { return log_rows_[static_cast<std::size_t>(m)]; }

  [[nodiscard]] SimilarityWeights weights() const { return SimilarityWeights(ratios_); }

  /// True when every coordinate of the ratio range is a single point, i.e.
  /// p_{m,i} = r_i^{s_m} for all i: the spectrum collapses to a point.
  [[nodiscard]] bool is_degenerate(double tol = 1e-12) const;

 private:
  std::vector<double> ratios_;
  std::vector<double> log_ratios_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::vector<double>> log_rows_;
};

/// beta(q) for q in R^M. Residual |sum - 1| < 1e-12.
double beta(const IfsModel& model, std::span<const double> q);
double beta(const IfsModel& model, double q);

/// alpha(q) = -grad beta(q).
std::vector<double> alpha(const IfsModel& model, std::span<const double> q);
double alpha(const IfsModel& model, double q);

/// Coordinate-wise [min_i, max_i] of log p_{m,i} / log r_i. For M > 1 this
/// is a bounding box of the attainable set, not the set itself.
std::vector<Interval> ratio_range(const IfsModel& model);

/// Largest |q_m| used for endpoint values of the transform.
inline constexpr double kLegendreQCap = 200.0;

struct LegendreValue {
  ExtReal value;
  /// Set when the infimum is approached at |q| -> infinity (range endpoints
  /// for M = 1, or a minimiser pinned to the search box for M > 1).
  bool boundary = false;
  std::vector<double> argmin_q;
};

/// beta*(a) = inf_q (<a|q> + beta(q)). NegInfinity outside the ratio range.
LegendreValue legendre(const IfsModel& model, std::span<const double> a);
LegendreValue legendre(const IfsModel& model, double a);

/// sup over a in I of beta*(a), M = 1. Grid over I intersected with the ratio
/// range, refined by golden-section search. NegInfinity when the
/// intersection is empty.
ExtReal legendre_sup(const IfsModel& model, Interval interval);

struct SpectrumSample {
  std::vector<double> q;
  double beta = 0.0;
  std::vector<double> alpha;
  double f = 0.0;  // <q|alpha> + beta
};

/// Samples (q, beta, alpha, f) at every q; evaluations are independent.
std::vector<SpectrumSample> spectrum_curve(const IfsModel& model, std::span<const std::vector<double>> qs,
                                           Execution exec = Execution::parallel);

/// Root of sum_i r_i^t = 1.
double similarity_dimension(std::span<const double> ratios);

}  // namespace mfzeta
