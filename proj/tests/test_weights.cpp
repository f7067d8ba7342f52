#include <doctest.h>

#include <cmath>
#include <random>

#include "mfzeta/weights.hpp"
#include "oracles.hpp"

using namespace mfzeta;

namespace {

// s_w = 1 for every word.
class UnitWeights final : public WeightSystem {
 public:
  int alphabet() const override { return 2; }
  double log_weight(const Word&) const override { return 0.0; }
  WeightConstants constants() const override { return {1.0, 1.0, 1.0}; }
  bool multiplicative() const override { return true; }
};

// s_w = r^|w| except that the parent relation is broken at length 3.
class BrokenParent final : public WeightSystem {
 public:
  int alphabet() const override { return 2; }
  double log_weight(const Word& w) const override {
    return w.size() == 3 ? std::log(0.5) * 2 : std::log(0.5) * static_cast<double>(w.size());
  }
  WeightConstants constants() const override { return {1.0, 0.1, 0.5}; }
  bool multiplicative() const override { return false; }
};

std::vector<std::pair<Word, Word>> all_pairs(int max_len, int alphabet) {
  std::vector<std::pair<Word, Word>> out;
  for (int a = 1; a <= max_len; ++a)
    for (int b = 1; a + b <= max_len; ++b)
      for (const auto& u : enumerate_words(a, alphabet))
        for (const auto& v : enumerate_words(b, alphabet)) out.emplace_back(u, v);
  return out;
}

}  // namespace

TEST_CASE("log_weight examples") {
  const SimilarityWeights half({0.5, 0.5});
  CHECK(half.log_weight(Word::parse("01")) == doctest::Approx(std::log(0.25)));
  const SimilarityWeights w({0.5, 0.25});
  CHECK(w.log_weight(Word::parse("11")) == doctest::Approx(std::log(0.0625)));
  CHECK(w.log_weight(Word::parse("01")) == doctest::Approx(std::log(0.5 * 0.25)));
  CHECK(w.log_weight(Word::parse("10")) == doctest::Approx(std::log(0.25 * 0.5)));
  const std::vector<int> counts{1, 1};
  CHECK(w.log_weight(counts) == doctest::Approx(std::log(0.125)));
  CHECK_THROWS_AS(SimilarityWeights({0.5, 1.0}), ConfigError);
  CHECK_THROWS_AS(SimilarityWeights({0.5}), ConfigError);
}

TEST_CASE("check_weight_axioms") {
  SUBCASE("equal ratios pass with c = 1") {
    const SimilarityWeights ws({0.5, 0.5});
    const auto pairs = all_pairs(6, 2);
    const auto report = check_weight_axioms(ws, pairs);
    CHECK(report.pass);
    CHECK(report.pairs_checked == pairs.size());
    CHECK(ws.constants().distortion == 1.0);
  }
  SUBCASE("random pairs pass") {
    const SimilarityWeights ws({0.3, 0.7});
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(1, 10);
    std::vector<std::pair<Word, Word>> pairs;
    for (int k = 0; k < 1000; ++k) {
      const int a = len(rng);
      const int b = len(rng);
      pairs.emplace_back(word_at(rng() % (1u << a), a, 2), word_at(rng() % (1u << b), b, 2));
    }
    CHECK(check_weight_axioms(ws, pairs).pass);
  }
  SUBCASE("unit weights fail s_max < 1") {
    const UnitWeights ws;
    const std::vector<std::pair<Word, Word>> pairs{{Word::parse("0"), Word::parse("1")}};
    const auto report = check_weight_axioms(ws, pairs);
    CHECK_FALSE(report.pass);
    REQUIRE(report.violation.has_value());
    CHECK(report.violation->axiom.find("s_max") != std::string::npos);
  }
  SUBCASE("broken parent relation is reported with the pair") {
    const BrokenParent ws;
    const auto report = check_weight_axioms(ws, all_pairs(4, 2));
    CHECK_FALSE(report.pass);
    REQUIRE(report.violation.has_value());
    CHECK(report.violation->first.size() + report.violation->second.size() <= 4);
  }
  SUBCASE("empty sample") {
    const SimilarityWeights ws({0.5, 0.5});
    CHECK_THROWS_AS(check_weight_axioms(ws, {}), ConfigError);
  }
}

TEST_CASE("property: additivity, bounds and powers") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> r{unit(rng), unit(rng), unit(rng)};
    const SimilarityWeights ws(r);
    const double lo = std::log(*std::min_element(r.begin(), r.end()));
    const double hi = std::log(*std::max_element(r.begin(), r.end()));
    for (int a = 1; a <= 4; ++a)
      for (const auto& u : enumerate_words(a, 3)) {
        const double lu = ws.log_weight(u);
        CHECK(lu >= lo * a - 1e-12);
        CHECK(lu <= hi * a + 1e-12);
        CHECK(ws.log_weight(u.power(3)) == doctest::Approx(3 * lu).epsilon(1e-14));
        CHECK(lu == doctest::Approx(static_cast<double>(oracle::log_weight(
                        oracle::Digits(u.symbols().begin(), u.symbols().end()), r))).epsilon(1e-14));
        for (const auto& v : enumerate_words(4 - a + 1, 3))
          CHECK(ws.log_weight(u.concat(v)) == doctest::Approx(lu + ws.log_weight(v)).epsilon(1e-14));
      }
  }
}
