#include "mfzeta/euler.hpp"

#include <algorithm>
#include <cmath>

#include "mfzeta/kernels.hpp"
#include "mfzeta/zeta.hpp"

namespace mfzeta {

PrimeForm euler_log_derivative(const WeightSystem& ws, const WordFilter& filter, double s, int max_prime_len,
                               Execution exec) {
  if (!ws.multiplicative()) throw ConfigError("Euler identity needs multiplicative weights");
  if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("s must be a positive real");
  const auto sum = exec == Execution::serial
                       ? kernels::prime_sum_serial(ws, filter, s, max_prime_len, kEnumerationBudget)
                       : kernels::prime_sum_omp(ws, filter, s, max_prime_len, kEnumerationBudget);
  return PrimeForm{sum.value, sum.primes};
}

EulerCheck euler_check(const WeightSystem& ws, const WordFilter& filter, double s, int max_len, Execution exec) {
  const PrimeForm primes = euler_log_derivative(ws, filter, s, max_len, exec);
  const PartialZeta zeta = partial_zeta(ws, filter, s, max_len, exec);
  EulerCheck out;
  out.s = s;
  out.max_len = max_len;
  out.zeta_trunc = zeta.value;
  out.prime_form = primes.value;
  out.primes_used = primes.primes;
  const double scale = std::max(std::abs(out.zeta_trunc), std::abs(out.prime_form));
  out.discrepancy = scale > 0.0 ? std::abs(out.zeta_trunc - out.prime_form) / scale : 0.0;
  if (!zeta.empty && zeta.last_term_log.is_finite())
    out.slow_tail = zeta.divergent || zeta.last_term_log.value() - zeta.log_value.value() > std::log(1e-2);
  return out;
}

}  // namespace mfzeta
