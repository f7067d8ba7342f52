#pragma once

// Word statistics: the finite-word functional whose value decides whether a
// word enters a zeta series. Two kinds ship:
//   ratio     (log p_{1,w}/log r_w, ..., log p_{M,w}/log r_w)
//   birkhoff  cyclic Birkhoff average of a k-gram table along www...

#include <span>
#include <variant>
#include <vector>

#include "mfzeta/measures.hpp"
#include "mfzeta/symbolic.hpp"

namespace mfzeta {

class WordStatistic {
 public:
  static WordStatistic ratio(IfsModel model);
  static WordStatistic birkhoff(KGramTable table);

  [[nodiscard]] bool is_ratio() const { return std::holds_alternative<IfsModel>(kind_); }
  [[nodiscard]] int alphabet() const;
  /// Output dimension M.
  [[nodiscard]] int dimension() const;
  /// True when the value depends on symbol counts only (ratio, or birkhoff
  /// with window 1).
  [[nodiscard]] bool composition_measurable() const;

  [[nodiscard]] std::vector<double> value(const Word& w) const;

  /// Throws ConfigError unless composition_measurable().
  [[nodiscard]] std::vector<double> value_on_composition(std::span<const int> counts) const;

  /// Tail slack Delta_n: bound on how far the value of a length-n word can
  /// move when the cyclic wrap-around windows are replaced by an arbitrary
  /// continuation. Zero for composition-measurable statistics; for birkhoff
  /// with window k it is 2 max|f| (k-1)/n.
  [[nodiscard]] double slack(int n) const;

  /// Model of a ratio statistic; throws for birkhoff.
  [[nodiscard]] const IfsModel& model() const;
  /// Table of a birkhoff statistic; throws for ratio.
  [[nodiscard]] const KGramTable& table() const;

 private:
  explicit WordStatistic(std::variant<IfsModel, KGramTable> kind) : kind_(std::move(kind)) {}

  std::variant<IfsModel, KGramTable> kind_;
};

/// Non-cyclic Birkhoff average of the first n windows of `extended`, where
/// n = extended.size() - (window - 1). Used to bound the slack.
double linear_birkhoff_average(const Word& extended, const KGramTable& f);

}  // namespace mfzeta
