#pragma once

// Data-parallel kernels. Every kernel has a serial reference (`*_serial`,
// kernels_serial.cpp) and an OpenMP version (`*_omp`, kernels_omp.cpp).
// The OpenMP versions partition work into kReductionChunks fixed chunks and
// merge partials in chunk order, so their output is independent of the
// thread count. Class tables are bit-identical to the serial ones; floating
// reductions agree to rounding.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "mfzeta/filter.hpp"
#include "mfzeta/numeric.hpp"
#include "mfzeta/symbolic.hpp"
#include "mfzeta/weights.hpp"

namespace mfzeta::kernels {

/// Terms of one level of a zeta series that pass the filter. Each entry is a
/// composition class (log multiplicity = log multinomial) or a single word
/// (log multiplicity 0).
struct LevelClasses {
  std::vector<double> log_multiplicity;
  std::vector<double> log_weight;
  std::uint64_t inspected = 0;  // classes or words looked at

  [[nodiscard]] std::size_t size() const { return log_weight.size(); }
};

/// Composition-grouped level: O(n^{N-1}) classes. Needs a weight system with
/// count_log_weights() and a composition-measurable statistic.
LevelClasses grouped_classes_serial(const WeightSystem& ws, const WordFilter& filter, int n);
LevelClasses grouped_classes_omp(const WeightSystem& ws, const WordFilter& filter, int n);

/// Direct enumeration of all N^n words; throws BudgetError beyond `budget`.
LevelClasses enumerated_classes_serial(const WeightSystem& ws, const WordFilter& filter, int n,
                                       std::uint64_t budget);
LevelClasses enumerated_classes_omp(const WeightSystem& ws, const WordFilter& filter, int n,
                                    std::uint64_t budget);

/// log sum_k exp(log_multiplicity_k + t * log_weight_k).
ExtReal log_sum_serial(const LevelClasses& classes, double t);
ExtReal log_sum_omp(const LevelClasses& classes, double t);

/// Stopping-set traversal result.
struct StoppingCount {
  std::uint64_t accepted = 0;
  std::uint64_t total = 0;
};

/// Counts words w with s_w <= delta < s_parent(w) whose statistic passes the
/// filter. `log_floor` is the smallest admissible log delta.
StoppingCount coarse_count_serial(const WeightSystem& ws, const WordFilter& filter, double delta,
                                  double log_floor);
StoppingCount coarse_count_omp(const WeightSystem& ws, const WordFilter& filter, double delta, double log_floor);

/// Sum over prime words u with |u| <= max_len passing the filter of
/// x / (1 - x), x = s_u^s.
struct PrimeSum {
  double value = 0.0;
  std::uint64_t primes = 0;  // primes passing the filter
};
PrimeSum prime_sum_serial(const WeightSystem& ws, const WordFilter& filter, double s, int max_len,
                          std::uint64_t budget);
PrimeSum prime_sum_omp(const WeightSystem& ws, const WordFilter& filter, double s, int max_len,
                       std::uint64_t budget);

// Shared helpers used by both implementations.
namespace detail {

/// Relative slack on s_w <= delta; keeps dyadic weights exactly at delta on
/// the stopping side despite rounding in the running log sum.
inline constexpr double kStopTolerance = 1e-12;

/// Calls f(counts) for count vectors with counts[0] == first and the
/// remaining n - first spread over symbols 1..N-1, in the same order as
/// for_each_count_vector.
template <class F>
void for_each_tail(int first, int n, int alphabet, F&& f) {
  std::vector<int> counts(static_cast<std::size_t>(alphabet), 0);
  counts[0] = first;
  auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == alphabet - 1) {
      counts[static_cast<std::size_t>(pos)] = remaining;
      f(std::span<const int>(counts));
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      counts[static_cast<std::size_t>(pos)] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  recurse(recurse, 1, n - first);
}

/// Appends the class for `counts` to `out` when it passes the filter.
void push_grouped_class(const WeightSystem& ws, const WordFilter& filter, int n, std::span<const int> counts,
                        LevelClasses& out);

/// Depth-first traversal, with an explicit stack, of the word tree below
/// `prefix` (whose log weight is `prefix_log_weight` > log_delta). Calls
/// emit(path, counts, log_weight) for every word w extending the prefix with
/// s_w <= delta < s_parent(w); children of emitted words are not visited.
template <class Emit>
void traverse_stopping(const WeightSystem& ws, std::vector<Symbol> prefix, double prefix_log_weight,
                       double log_delta, Emit&& emit) {
  const int alphabet = ws.alphabet();
  const auto count_lw = ws.count_log_weights();
  const double threshold = log_delta + kStopTolerance * std::abs(log_delta);
  std::vector<int> counts(static_cast<std::size_t>(alphabet), 0);
  for (Symbol s : prefix) ++counts[s];
  std::vector<Symbol>& path = prefix;
  const std::size_t base = path.size();
  std::vector<double> lw_stack{prefix_log_weight};
  std::vector<int> next_child{0};
  while (!next_child.empty()) {
    int& child = next_child.back();
    if (child == alphabet) {
      next_child.pop_back();
      lw_stack.pop_back();
      if (path.size() > base) {
        --counts[path.back()];
        path.pop_back();
      }
      continue;
    }
    const auto sym = static_cast<Symbol>(child++);
    path.push_back(sym);
    ++counts[sym];
    const double lw = count_lw.empty() ? ws.log_weight(Word(path)) : lw_stack.back() + count_lw[sym];
    if (lw <= threshold) {
      emit(std::span<const Symbol>(path), std::span<const int>(counts), lw);
      --counts[sym];
      path.pop_back();
    } else {
      lw_stack.push_back(lw);
      next_child.push_back(0);
    }
  }
}

/// Counts stopping words below `prefix` that pass the filter.
StoppingCount stopping_subtree(const WeightSystem& ws, const WordFilter& filter, std::vector<Symbol> prefix,
                               double prefix_log_weight, double log_delta);

void check_level_inputs(const WeightSystem& ws, const WordFilter& filter, int n);

}  // namespace detail

}  // namespace mfzeta::kernels
