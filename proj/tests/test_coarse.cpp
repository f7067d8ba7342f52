#include <doctest.h>

#include <cmath>
#include <random>

#include "mfzeta/coarse.hpp"
#include "mfzeta/measures.hpp"
#include "oracles.hpp"

using namespace mfzeta;

namespace {

const IfsModel kBinomial({0.5, 0.5}, {{0.2, 0.8}});
const IfsModel kUniform({0.5, 0.5}, {{0.5, 0.5}});

std::vector<std::string> strings(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.to_string());
  return out;
}

std::vector<double> dyadic_ladder(int from, int to) {
  std::vector<double> out;
  for (int k = from; k <= to; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

}  // namespace

TEST_CASE("stopping_words examples") {
  CHECK(strings(stopping_words(SimilarityWeights({0.5, 0.5}), 0.25)) ==
        std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(strings(stopping_words(SimilarityWeights({0.5, 0.25}), 0.25)) == std::vector<std::string>{"00", "01", "1"});
  CHECK(strings(stopping_words(SimilarityWeights({0.3, 0.6, 0.2}), 0.7)) == std::vector<std::string>{"0", "1", "2"});
  CHECK_THROWS_AS(stopping_words(SimilarityWeights({0.5, 0.5}), 1.0), ConfigError);
  CHECK_THROWS_AS(stopping_words(SimilarityWeights({0.5, 0.5}), 0.0), ConfigError);
  CHECK_THROWS_AS(stopping_words(SimilarityWeights({0.5, 0.5}), std::ldexp(1.0, -50)), BudgetError);
}

TEST_CASE("stopping_words match the recursive oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> r{u(rng), u(rng), u(rng)};
    const double delta = std::pow(10.0, -1.0 - 2.0 * u(rng));
    const auto words = stopping_words(SimilarityWeights(r), delta);
    const auto expected = oracle::stopping_set(r, delta);
    REQUIRE(words.size() == expected.size());
    for (std::size_t k = 0; k < words.size(); ++k)
      CHECK(oracle::Digits(words[k].symbols().begin(), words[k].symbols().end()) == expected[k]);
  }
}

TEST_CASE("property: stopping sets tile the shift space with one-step overshoot") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.1, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<double> r{u(rng), u(rng), u(rng)};
    std::vector<double> p{u(rng), u(rng), u(rng)};
    const double s = p[0] + p[1] + p[2];
    for (double& x : p) x /= s;
    const double delta = std::pow(10.0, -1.0 - 2.0 * u(rng));
    const SimilarityWeights ws(r);
    const double s_min = ws.constants().s_min;
    long double mass = 0.0L;
    for (const auto& w : stopping_words(ws, delta)) {
      long double pw = 1.0L;
      for (Symbol sym : w.symbols()) pw *= p[sym];
      mass += pw;
      const double sw = std::exp(ws.log_weight(w));
      CHECK(sw <= delta * (1 + 1e-9));
      CHECK(sw > delta * s_min * (1 - 1e-9));
      if (w.size() > 1) CHECK(std::exp(ws.log_weight(w.parent())) > delta);
    }
    CHECK(std::abs(static_cast<double>(mass) - 1.0) < 1e-10);
  }
}

TEST_CASE("coarse_count examples") {
  const SimilarityWeights ws({0.5, 0.5});
  for (int k = 1; k <= 14; ++k) {
    const auto c = coarse_count(ws, WordStatistic::ratio(kUniform), std::ldexp(1.0, -k), Target::point({1.0}), 0.1);
    CHECK(c.count == (1ull << k));
    CHECK(c.total == (1ull << k));
  }
  CHECK(coarse_count(ws, WordStatistic::ratio(kBinomial), 1.0 / 1024, Target::point({3.0}), 0.1).count == 0);

  const std::vector<double> p{0.2, 0.8}, r{0.5, 0.5};
  std::uint64_t brute = 0;
  for (const auto& w : oracle::all_words(10, 2))
    brute += oracle::interval_distance(oracle::ratio_value(w, p, r), 0.5, 1.0) <= 1e-12L;
  const auto c = coarse_count(ws, WordStatistic::ratio(kBinomial), 1.0 / 1024, Target::box({{0.5, 1.0}}), 0.0);
  CHECK(c.count == brute);
  CHECK(c.total == 1024);
}

TEST_CASE("property: coarse counts are bounded and monotone in the radius") {
  const SimilarityWeights ws({0.3, 0.6});
  const auto stat = WordStatistic::ratio(IfsModel({0.3, 0.6}, {{0.4, 0.6}}));
  for (double delta : {0.05, 0.003, 1e-4}) {
    std::uint64_t prev = 0;
    for (double r : {0.0, 0.01, 0.05, 0.2, 1.0}) {
      const auto c = coarse_count(ws, stat, delta, Target::point({0.9}), r);
      CHECK(c.count <= c.total);
      CHECK(c.count >= prev);
      prev = c.count;
    }
  }
}

TEST_CASE("coarse_spectrum_estimate") {
  const SimilarityWeights ws({0.5, 0.5});
  const auto ladder = dyadic_ladder(8, 16);
  const auto uni = coarse_spectrum_estimate(ws, WordFilter(WordStatistic::ratio(kUniform), Target::point({1.0}), 0.0),
                                            ladder);
  CHECK(std::abs(uni.slope.value() - 1.0) < 1e-9);
  CHECK(uni.fitted == ladder.size());
  for (const auto& row : uni.rows) CHECK(std::abs(row.residual) < 1e-9);

  const double a1 = alpha(kBinomial, 1.0);
  const auto bin = coarse_spectrum_estimate(
      ws, WordFilter(WordStatistic::ratio(kBinomial), Target::point({a1}), 0.1), ladder);
  CHECK(std::abs(bin.slope.value() - 0.72193) < 0.1);

  const auto empty = coarse_spectrum_estimate(
      ws, WordFilter(WordStatistic::ratio(kBinomial), Target::point({3.0}), 0.1), ladder);
  CHECK(empty.slope.is_neg_inf());
  CHECK(empty.fitted == 0);

  const std::vector<double> short_ladder{0.1, 0.01};
  CHECK_THROWS_AS(coarse_spectrum_estimate(ws, WordFilter(WordStatistic::ratio(kUniform), Target::point({1.0}), 0.0),
                                           short_ladder),
                  ConfigError);
  const std::vector<double> rising{0.01, 0.1, 0.001};
  CHECK_THROWS_AS(coarse_spectrum_estimate(ws, WordFilter(WordStatistic::ratio(kUniform), Target::point({1.0}), 0.0),
                                           rising),
                  ConfigError);
}

TEST_CASE("serial and parallel coarse counts agree") {
  const SimilarityWeights ws({0.3, 0.5, 0.2});
  const auto stat = WordStatistic::ratio(IfsModel({0.3, 0.5, 0.2}, {{0.2, 0.5, 0.3}}));
  const WordFilter f(stat, Target::box({{0.8, 1.3}}), 0.0);
  for (double delta : {0.1, 1e-3, 1e-5}) {
    const auto a = coarse_count(ws, f, delta, Execution::serial);
    const auto b = coarse_count(ws, f, delta, Execution::parallel);
    CHECK(a.count == b.count);
    CHECK(a.total == b.total);
  }
}
