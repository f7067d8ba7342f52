#include "mfzeta/symbolic.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace mfzeta {

Word::Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

Word::Word(std::initializer_list<int> symbols) {
  symbols_.reserve(symbols.size());
  for (int s : symbols) {
    if (s < 0 || s >= kMaxAlphabet) throw ConfigError("symbol out of range");
    symbols_.push_back(static_cast<Symbol>(s));
  }
}

Word Word::parse(std::string_view digits) {
  std::vector<Symbol> out;
  out.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw ConfigError("word digits must be 0-9, got '" + std::string(digits) + "'");
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  if (out.empty()) throw ConfigError("empty word");
  return Word(std::move(out));
}

Word Word::parent() const {
  if (symbols_.size() < 2) throw ConfigError("a length-1 word has no parent word");
  return Word(std::vector<Symbol>(symbols_.begin(), symbols_.end() - 1));
}

Word Word::concat(const Word& other) const {
  std::vector<Symbol> out(symbols_);
  out.insert(out.end(), other.symbols_.begin(), other.symbols_.end());
  return Word(std::move(out));
}

Word Word::power(int k) const {
  if (k < 1) throw ConfigError("word power must be >= 1");
  std::vector<Symbol> out;
  out.reserve(symbols_.size() * static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.insert(out.end(), symbols_.begin(), symbols_.end());
  return Word(std::move(out));
}

void Word::validate(int alphabet) const {
  if (symbols_.empty()) throw ConfigError("words must have length >= 1");
  for (Symbol s : symbols_)
    if (s >= alphabet) throw ConfigError("symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(alphabet));
}

std::string Word::to_string() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Symbol s : symbols_) {
    if (s < 10)
      out.push_back(static_cast<char>('0' + s));
    else
      out += "(" + std::to_string(s) + ")";
  }
  return out;
}

void check_alphabet(int alphabet) {
  if (alphabet < 2 || alphabet > kMaxAlphabet)
    throw ConfigError("alphabet size must be in [2, " + std::to_string(kMaxAlphabet) + "]");
}

std::vector<Word> enumerate_words(int n, int alphabet) {
  std::vector<Word> out;
  for_each_word(n, alphabet, [&](const Word& w) { out.push_back(w); });
  return out;
}

Word word_at(std::uint64_t index, int n, int alphabet) {
  std::vector<Symbol> digits(static_cast<std::size_t>(n), 0);
  for (int pos = n - 1; pos >= 0; --pos) {
    digits[static_cast<std::size_t>(pos)] = static_cast<Symbol>(index % static_cast<std::uint64_t>(alphabet));
    index /= static_cast<std::uint64_t>(alphabet);
  }
  return Word(std::move(digits));
}

std::uint64_t word_count(int n, int alphabet, std::uint64_t budget) {
  check_alphabet(alphabet);
  if (n < 1) throw ConfigError("word length must be >= 1");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > budget / static_cast<std::uint64_t>(alphabet))
      throw BudgetError("enumerating " + std::to_string(alphabet) + "^" + std::to_string(n) +
                        " words exceeds the budget of " + std::to_string(budget));
    count *= static_cast<std::uint64_t>(alphabet);
  }
  return count;
}

std::size_t minimal_period(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  // border[i]: length of the longest proper border of w[0..i].
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = border[i - 1];
    while (k > 0 && w[i] != w[k]) k = border[k - 1];
    if (w[i] == w[k]) ++k;
    border[i] = k;
  }
  return n - border[n - 1];
}

bool is_prime(const Word& w) {
  const std::size_t n = w.size();
  const std::size_t p = minimal_period(w);
  return p == n || n % p != 0;
}

std::pair<Word, int> prime_root(const Word& w) {
  const std::size_t n = w.size();
  const std::size_t p = minimal_period(w);
  if (p == n || n % p != 0) return {w, 1};
  auto syms = w.symbols();
  return {Word(std::vector<Symbol>(syms.begin(), syms.begin() + static_cast<std::ptrdiff_t>(p))),
          static_cast<int>(n / p)};
}

std::vector<Word> enumerate_primes(int max_len, int alphabet) {
  if (max_len < 1) throw ConfigError("max_len must be >= 1");
  std::vector<Word> out;
  for (int n = 1; n <= max_len; ++n)
    for_each_word(n, alphabet, [&](const Word& w) {
      if (is_prime(w)) out.push_back(w);
    });
  return out;
}

namespace {

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::uint64_t aperiodic_word_count(int n, int alphabet) {
  std::int64_t total = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) total += moebius(d) * static_cast<std::int64_t>(ipow(static_cast<std::uint64_t>(alphabet), n / d));
  return static_cast<std::uint64_t>(total);
}

int Composition::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

double log_multinomial(std::span<const int> counts) {
  int n = 0;
  double acc = 0.0;
  for (int k : counts) {
    n += k;
    acc -= std::lgamma(static_cast<double>(k) + 1.0);
  }
  return acc + std::lgamma(static_cast<double>(n) + 1.0);
}

std::vector<int> composition_of(const Word& w, int alphabet) {
  std::vector<int> counts(static_cast<std::size_t>(alphabet), 0);
  for (Symbol s : w.symbols()) {
    if (s >= alphabet) throw ConfigError("symbol outside alphabet");
    ++counts[s];
  }
  return counts;
}

std::vector<Composition> compositions(int n, int alphabet) {
  std::vector<Composition> out;
  for_each_count_vector(n, alphabet, [&](std::span<const int> c) {
    out.push_back(Composition{std::vector<int>(c.begin(), c.end()), log_multinomial(c)});
  });
  return out;
}

KGramTable::KGramTable(int alphabet, int window, std::vector<double> values)
    : alphabet_(alphabet), window_(window), values_(std::move(values)) {
  check_alphabet(alphabet);
  if (window < 1) throw ConfigError("k-gram window must be >= 1");
  std::size_t expected = 1;
  for (int i = 0; i < window; ++i) {
    expected *= static_cast<std::size_t>(alphabet);
    if (expected > (std::size_t{1} << 24)) throw ConfigError("k-gram table too large");
  }
  if (values_.size() != expected)
    throw ConfigError("k-gram table needs " + std::to_string(expected) + " entries, got " +
                      std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw ConfigError("k-gram table entries must be finite");
}

double KGramTable::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double KGramTable::at(std::span<const Symbol> gram) const {
  if (gram.size() != static_cast<std::size_t>(window_)) throw ConfigError("k-gram has the wrong length");
  std::size_t index = 0;
  for (Symbol s : gram) {
    if (s >= alphabet_) throw ConfigError("k-gram lookup: symbol outside alphabet");
    index = index * static_cast<std::size_t>(alphabet_) + s;
  }
  return values_[index];
}

double KGramTable::at_cyclic(const Word& w, std::size_t start) const {
  const std::size_t n = w.size();
  std::size_t index = 0;
  for (int j = 0; j < window_; ++j) {
    Symbol s = w[(start + static_cast<std::size_t>(j)) % n];
    if (s >= alphabet_) throw ConfigError("k-gram lookup: symbol outside alphabet");
    index = index * static_cast<std::size_t>(alphabet_) + s;
  }
  return values_[index];
}

double cyclic_birkhoff_average(const Word& w, const KGramTable& f) {
  if (w.empty()) throw ConfigError("Birkhoff average of an empty word");
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) sum += f.at_cyclic(w, j);
  return sum / static_cast<double>(w.size());
}

}  // namespace mfzeta
