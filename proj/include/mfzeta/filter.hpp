#pragma once

#include <span>

#include "mfzeta/statistics.hpp"
#include "mfzeta/targets.hpp"

namespace mfzeta {

/// How the tail slack Delta_n of a statistic enters the filter.
///   exact: value(w) in B(C, r)              (the cyclic-average definition)
///   widen: value(w) in B(C, r + Delta_|w|)
enum class SlackPolicy { exact, widen };

/// The zeta-series filter "value(w) in B(C, r)" for a fixed statistic,
/// target and radius.
class WordFilter {
 public:
  WordFilter(WordStatistic statistic, Target target, double radius, SlackPolicy policy = SlackPolicy::exact);

  [[nodiscard]] const WordStatistic& statistic() const { return statistic_; }
  [[nodiscard]] const Target& target() const { return target_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] SlackPolicy policy() const { return policy_; }

  /// True when no value can ever pass (empty target).
  [[nodiscard]] bool trivially_empty() const { return target_.is_empty(); }

  [[nodiscard]] double effective_radius(int n) const {
    return policy_ == SlackPolicy::widen ? radius_ + statistic_.slack(n) : radius_;
  }

  [[nodiscard]] bool accepts_value(std::span<const double> value, int n) const {
    return target_.contains(value, effective_radius(n));
  }
  [[nodiscard]] bool accepts(const Word& w) const {
    return accepts_value(statistic_.value(w), static_cast<int>(w.size()));
  }
  /// Requires a composition-measurable statistic.
  [[nodiscard]] bool accepts_counts(std::span<const int> counts, int n) const {
    return accepts_value(statistic_.value_on_composition(counts), n);
  }

 private:
  WordStatistic statistic_;
  Target target_;
  double radius_;
  SlackPolicy policy_;
};

inline WordFilter::WordFilter(WordStatistic statistic, Target target, double radius, SlackPolicy policy)
    : statistic_(std::move(statistic)), target_(std::move(target)), radius_(radius), policy_(policy) {
  if (!(radius_ >= 0.0)) throw ConfigError("radius must be >= 0");
  if (target_.dimension() != statistic_.dimension())
    throw ConfigError("target dimension " + std::to_string(target_.dimension()) +
                      " does not match statistic dimension " + std::to_string(statistic_.dimension()));
}

}  // namespace mfzeta
