#pragma once

// Euler identity for multiplicative weights. Every word is a unique power
// u^k of a prime word u, and the filter of a ratio statistic accepts u^k iff
// it accepts u, so
//
//   zeta(s) = sum over filtered primes u of s_u^s / (1 - s_u^s),
//
// the logarithmic derivative L Q of the prime product.

#include <cstdint>

#include "mfzeta/filter.hpp"
#include "mfzeta/numeric.hpp"
#include "mfzeta/weights.hpp"

namespace mfzeta {

struct PrimeForm {
  double value = 0.0;
  std::uint64_t primes = 0;  // filtered primes of length <= max_prime_len
};

/// Prime sum truncated at prime length max_prime_len, each term in closed
/// form. Throws ConfigError for non-multiplicative weights or s <= 0.
PrimeForm euler_log_derivative(const WeightSystem& ws, const WordFilter& filter, double s, int max_prime_len,
                               Execution exec = Execution::parallel);

struct EulerCheck {
  double s = 0.0;
  int max_len = 0;
  double zeta_trunc = 0.0;
  double prime_form = 0.0;
  /// |zeta_trunc - prime_form| / max(|zeta_trunc|, |prime_form|); 0 when both vanish.
  double discrepancy = 0.0;
  std::uint64_t primes_used = 0;
  /// The last level still carries more than 1e-2 of the truncated sum, or
  /// the level terms are not decaying: s is too close to the abscissa.
  bool slow_tail = false;
};

EulerCheck euler_check(const WeightSystem& ws, const WordFilter& filter, double s, int max_len,
                       Execution exec = Execution::parallel);

}  // namespace mfzeta
