#pragma once

// Finite words over the alphabet {0, ..., N-1}: enumeration, primality,
// symbol-count compositions and cyclic Birkhoff sums.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfzeta/numeric.hpp"

namespace mfzeta {

using Symbol = std::uint8_t;

inline constexpr int kMaxAlphabet = 64;

/// A non-empty finite word. A word also stands for its cylinder set.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols);
  Word(std::initializer_list<int> symbols);

  /// Parses a digit string such as "0110" (symbols 0..9 only).
  static Word parse(std::string_view digits);

  [[nodiscard]] std::size_t size() const { return symbols_.size(); }
  [[nodiscard]] bool empty() const { return symbols_.empty(); }
  [[nodiscard]] Symbol operator[](std::size_t i) const { return symbols_[i]; }
  [[nodiscard]] std::span<const Symbol> symbols() const { return symbols_; }

  /// Word with the last symbol dropped (the parent cylinder). Throws for length 1.
  [[nodiscard]] Word parent() const;
  [[nodiscard]] Word concat(const Word& other) const;
  [[nodiscard]] Word power(int k) const;

  /// Throws ConfigError unless non-empty with every symbol below `alphabet`.
  void validate(int alphabet) const;

  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

void check_alphabet(int alphabet);

/// Calls f(word) for all alphabet^n words of length n in lexicographic order.
template <class F>
void for_each_word(int n, int alphabet, F&& f) {
  check_alphabet(alphabet);
  if (n < 1) throw ConfigError("word length must be >= 1");
  std::vector<Symbol> digits(static_cast<std::size_t>(n), 0);
  for (;;) {
    f(Word(digits));
    int pos = n - 1;
    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == alphabet - 1) {
      digits[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
    ++digits[static_cast<std::size_t>(pos)];
  }
}

std::vector<Word> enumerate_words(int n, int alphabet);

/// The word of length n whose base-`alphabet` digits spell `index`.
Word word_at(std::uint64_t index, int n, int alphabet);

/// Number of words alphabet^n; throws BudgetError if it exceeds `budget`.
std::uint64_t word_count(int n, int alphabet, std::uint64_t budget);

/// Smallest p >= 1 with w[i] == w[i+p] for all valid i (border array).
std::size_t minimal_period(const Word& w);

/// True iff w is not u^k for any word u and k >= 2.
bool is_prime(const Word& w);

/// The unique factorisation w = root^exponent with root prime.
std::pair<Word, int> prime_root(const Word& w);

/// All prime words of length <= max_len, grouped by length, each group in
/// lexicographic order.
std::vector<Word> enumerate_primes(int max_len, int alphabet);

/// Number of aperiodic words of length n by Moebius inversion.
std::uint64_t aperiodic_word_count(int n, int alphabet);

/// Symbol counts of a length-n word plus log(n! / prod k_j!).
struct Composition {
  std::vector<int> counts;
  double log_multinomial = 0.0;

  [[nodiscard]] int total() const;
};

double log_multinomial(std::span<const int> counts);

std::vector<int> composition_of(const Word& w, int alphabet);

/// Calls f(counts) for every count vector of length `alphabet` summing to n,
/// in reverse lexicographic order of counts (first symbol's count descending).
template <class F>
void for_each_count_vector(int n, int alphabet, F&& f) {
  check_alphabet(alphabet);
  if (n < 1) throw ConfigError("composition total must be >= 1");
  std::vector<int> counts(static_cast<std::size_t>(alphabet), 0);
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
  recurse(recurse, 0, n);
}

std::vector<Composition> compositions(int n, int alphabet);

/// A real function on k-grams, stored in lexicographic k-gram order.
class KGramTable {
 public:
  KGramTable(int alphabet, int window, std::vector<double> values);

  [[nodiscard]] int alphabet() const { return alphabet_; }
  [[nodiscard]] int window() const { return window_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double max_abs() const;

  /// f of the k-gram starting at `start`, read cyclically from w.
  [[nodiscard]] double at_cyclic(const Word& w, std::size_t start) const;
  /// f of the k-gram given explicitly.
  [[nodiscard]] double at(std::span<const Symbol> gram) const;

 private:
  int alphabet_;
  int window_;
  std::vector<double> values_;
};

/// (1/n) sum_j f(w_j w_{j+1} ... w_{j+k-1}) with indices mod n: the Birkhoff
/// average of f along the periodic point www...
double cyclic_birkhoff_average(const Word& w, const KGramTable& f);

}  // namespace mfzeta
