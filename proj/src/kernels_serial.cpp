// Serial reference kernels.

#include "mfzeta/kernels.hpp"

namespace mfzeta::kernels {

namespace detail {

void check_level_inputs(const WeightSystem& ws, const WordFilter& filter, int n) {
  if (n < 1) throw ConfigError("level must be >= 1");
  if (ws.alphabet() != filter.statistic().alphabet())
    throw ConfigError("weight system and statistic use different alphabets");
}

void push_grouped_class(const WeightSystem& ws, const WordFilter& filter, int n, std::span<const int> counts,
                        LevelClasses& out) {
  ++out.inspected;
  if (!filter.accepts_counts(counts, n)) return;
  const auto lr = ws.count_log_weights();
  double lw = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) lw += counts[j] * lr[j];
  out.log_multiplicity.push_back(log_multinomial(counts));
  out.log_weight.push_back(lw);
}

StoppingCount stopping_subtree(const WeightSystem& ws, const WordFilter& filter, std::vector<Symbol> prefix,
                               double prefix_log_weight, double log_delta) {
  StoppingCount out;
  const bool grouped = filter.statistic().composition_measurable();
  traverse_stopping(ws, std::move(prefix), prefix_log_weight, log_delta,
                    [&](std::span<const Symbol> path, std::span<const int> counts, double) {
                      ++out.total;
                      const int n = static_cast<int>(path.size());
                      const bool pass = grouped ? filter.accepts_counts(counts, n)
                                                : filter.accepts(Word(std::vector<Symbol>(path.begin(), path.end())));
                      if (pass) ++out.accepted;
                    });
  return out;
}

}  // namespace detail

namespace {

void check_grouping(const WeightSystem& ws, const WordFilter& filter) {
  if (ws.count_log_weights().empty()) throw ConfigError("weight system is not composition-measurable");
  if (!filter.statistic().composition_measurable()) throw ConfigError("statistic is not composition-measurable");
}

void check_stopping(double delta, double log_floor) {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (std::log(delta) < log_floor) throw BudgetError("delta is below the configured floor");
}

}  // namespace

LevelClasses grouped_classes_serial(const WeightSystem& ws, const WordFilter& filter, int n) {
  detail::check_level_inputs(ws, filter, n);
  check_grouping(ws, filter);
  LevelClasses out;
  if (filter.trivially_empty()) return out;
  for_each_count_vector(n, ws.alphabet(),
                        [&](std::span<const int> counts) { detail::push_grouped_class(ws, filter, n, counts, out); });
  return out;
}

LevelClasses enumerated_classes_serial(const WeightSystem& ws, const WordFilter& filter, int n,
                                       std::uint64_t budget) {
  detail::check_level_inputs(ws, filter, n);
  word_count(n, ws.alphabet(), budget);
  LevelClasses out;
  if (filter.trivially_empty()) return out;
  for_each_word(n, ws.alphabet(), [&](const Word& w) {
    ++out.inspected;
    if (!filter.accepts(w)) return;
    out.log_multiplicity.push_back(0.0);
    out.log_weight.push_back(ws.log_weight(w));
  });
  return out;
}

ExtReal log_sum_serial(const LevelClasses& classes, double t) {
  LogSumExp acc;
  for (std::size_t k = 0; k < classes.size(); ++k) acc.add(classes.log_multiplicity[k] + t * classes.log_weight[k]);
  return acc.value();
}

StoppingCount coarse_count_serial(const WeightSystem& ws, const WordFilter& filter, double delta,
                                  double log_floor) {
  check_stopping(delta, log_floor);
  if (ws.alphabet() != filter.statistic().alphabet())
    throw ConfigError("weight system and statistic use different alphabets");
  return detail::stopping_subtree(ws, filter, {}, 0.0, std::log(delta));
}

PrimeSum prime_sum_serial(const WeightSystem& ws, const WordFilter& filter, double s, int max_len,
                          std::uint64_t budget) {
  detail::check_level_inputs(ws, filter, max_len);
  std::uint64_t total = 0;
  for (int len = 1; len <= max_len; ++len) total += word_count(len, ws.alphabet(), budget);
  if (total > budget) throw BudgetError("prime enumeration exceeds the word budget");
  PrimeSum out;
  if (filter.trivially_empty()) return out;
  for (int len = 1; len <= max_len; ++len) {
    for_each_word(len, ws.alphabet(), [&](const Word& w) {
      if (!is_prime(w) || !filter.accepts(w)) return;
      out.value += 1.0 / std::expm1(-s * ws.log_weight(w));  // x / (1 - x)
      ++out.primes;
    });
  }
  return out;
}

}  // namespace mfzeta::kernels
