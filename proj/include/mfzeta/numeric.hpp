#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

namespace mfzeta {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid model, statistic, target or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A direct enumeration would exceed its word budget.
class BudgetError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A real number or negative infinity.
///
/// Empty zeta series have abscissa -inf and empty level sums have
/// logarithm -inf. Carrying that state explicitly keeps it apart from any
/// finite double, including very negative ones produced by underflow.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  constexpr explicit ExtReal(double v) : value_(v), finite_(true) {}

  static constexpr ExtReal neg_inf() { return ExtReal{}; }

  [[nodiscard]] constexpr bool is_neg_inf() const { return !finite_; }
  [[nodiscard]] constexpr bool is_finite() const { return finite_; }

  /// Throws NumericError for -inf.
  [[nodiscard]] double value() const {
    if (!finite_) throw NumericError("ExtReal::value() on negative infinity");
    return value_;
  }

  /// The finite value, or -infinity as an IEEE double.
  [[nodiscard]] constexpr double as_double() const {
    return finite_ ? value_ : -std::numeric_limits<double>::infinity();
  }

  [[nodiscard]] std::string to_string() const;

  friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend constexpr std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    if (!a.finite_ && !b.finite_) return std::partial_ordering::equivalent;
    if (!a.finite_) return std::partial_ordering::less;
    if (!b.finite_) return std::partial_ordering::greater;
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
  bool finite_ = false;
};

/// Streaming log-sum-exp accumulator. Order of add() calls fixes the result
/// bit-for-bit, which the parallel kernels rely on for reproducibility.
class LogSumExp {
 public:
  void add(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (empty_) {
      max_ = x;
      scaled_ = 1.0;
      empty_ = false;
    } else if (x > max_) {
      scaled_ = scaled_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      scaled_ += std::exp(x - max_);
    }
  }

  void merge(const LogSumExp& other) {
    if (other.empty_) return;
    if (empty_) {
      *this = other;
      return;
    }
    if (other.max_ > max_) {
      scaled_ = scaled_ * std::exp(max_ - other.max_) + other.scaled_;
      max_ = other.max_;
    } else {
      scaled_ += other.scaled_ * std::exp(other.max_ - max_);
    }
  }

  [[nodiscard]] bool empty() const { return empty_; }
  [[nodiscard]] ExtReal value() const {
    return empty_ ? ExtReal::neg_inf() : ExtReal(max_ + std::log(scaled_));
  }

 private:
  double max_ = 0.0;
  double scaled_ = 0.0;
  bool empty_ = true;
};

/// Root of a strictly decreasing function on [lo, hi] by bisection.
/// Requires f(lo) >= 0 >= f(hi); stops when the bracket is narrower than tol.
template <class F>
double bisect_decreasing(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo < 0.0 || fhi > 0.0) throw NumericError("bisect_decreasing: root not bracketed");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Execution policy for the data-parallel kernels. `serial` runs the
/// reference implementation that the OpenMP kernels are tested against.
enum class Execution { serial, parallel };

}  // namespace mfzeta
