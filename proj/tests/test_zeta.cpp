#include <doctest.h>

#include <cmath>
#include <random>

#include "mfzeta/zeta.hpp"
#include "oracles.hpp"

using namespace mfzeta;

namespace {

const IfsModel kBinomial({0.5, 0.5}, {{0.2, 0.8}});
const IfsModel kUniform({0.5, 0.5}, {{0.5, 0.5}});

WordFilter ratio_filter(const IfsModel& m, Target t, double r) { return WordFilter(WordStatistic::ratio(m), t, r); }

IfsModel random_model(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::vector<double> r(static_cast<std::size_t>(N)), p(static_cast<std::size_t>(N));
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    r[static_cast<std::size_t>(i)] = u(rng);
    s += (p[static_cast<std::size_t>(i)] = u(rng));
  }
  for (double& x : p) x /= s;
  return IfsModel(r, {p});
}

}  // namespace

TEST_CASE("level_sum examples") {
  const SimilarityWeights ws({0.5, 0.5});
  for (int n : {1, 5, 40})
    for (double t : {0.0, 0.3, 2.0}) {
      const auto rep = level_sum(ws, WordStatistic::ratio(kUniform), t, n, Target::point({1.0}), 0.0);
      CHECK(rep.log_A.value() == doctest::Approx(n * (1 - t) * std::log(2.0)).epsilon(1e-12));
      CHECK(rep.grouped);
    }
  for (int n : {1, 10, 100})
    CHECK(level_sum(ws, WordStatistic::ratio(kBinomial), 1.0, n, Target::point({3.0}), 0.1).log_A.is_neg_inf());

  const std::vector<double> p{0.2, 0.8}, r{0.5, 0.5};
  const auto rep = level_sum(ws, WordStatistic::ratio(kBinomial), 0.5, 10, Target::box({{0.5, 1.0}}), 0.0);
  const long double brute = oracle::brute_log_level_sum(10, r, 0.5, [&](const oracle::Digits& w) {
    return oracle::interval_distance(oracle::ratio_value(w, p, r), 0.5, 1.0) <= 1e-12L;
  });
  CHECK(rep.log_A.value() == doctest::Approx(static_cast<double>(brute)).epsilon(1e-12));
  CHECK_THROWS_AS(level_sum(ws, WordStatistic::ratio(kBinomial), 0.5, 0, Target::box({{0.5, 1.0}}), 0.0),
                  ConfigError);
  CHECK_THROWS_AS(level_sum(ws, WordStatistic::ratio(kBinomial), 0.5, 3, Target::box({{0.5, 1.0}}), -1.0),
                  ConfigError);
}

TEST_CASE("property: grouped level sums equal brute-force enumeration") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ut(-1.0, 3.0);
  for (int trial = 0; trial < 12; ++trial) {
    const int N = 2 + trial % 2;
    const auto model = random_model(rng, N);
    const auto range = ratio_range(model)[0];
    std::uniform_real_distribution<double> ua(range.lo, range.hi);
    double a = ua(rng), b = ua(rng);
    if (a > b) std::swap(a, b);
    const double t = ut(rng);
    const double radius = trial % 3 == 0 ? 0.0 : 0.05;
    const WordFilter f = ratio_filter(model, Target::box({{a, b}}), radius);
    const SimilarityWeights ws(std::vector<double>(model.ratios().begin(), model.ratios().end()));
    const std::vector<double> p(model.row(0).begin(), model.row(0).end());
    const std::vector<double> r(model.ratios().begin(), model.ratios().end());
    for (int n = 1; n <= (N == 2 ? 12 : 8); ++n) {
      const auto rep = level_sum(ws, f, t, n);
      const long double brute = oracle::brute_log_level_sum(n, r, t, [&](const oracle::Digits& w) {
        return oracle::interval_distance(oracle::ratio_value(w, p, r), a, b) <= radius + 1e-12;
      });
      if (std::isinf(static_cast<double>(brute))) {
        CHECK(rep.log_A.is_neg_inf());
      } else {
        REQUIRE(rep.log_A.is_finite());
        // Relative agreement of A_n, i.e. absolute agreement of log A_n.
        CHECK(std::abs(std::expm1(rep.log_A.value() - static_cast<double>(brute))) < 1e-9);
      }
    }
  }
}

TEST_CASE("enumerated level sums for window-2 statistics") {
  const KGramTable f(2, 2, {0.0, 1.0, 1.0, 0.0});
  const WordFilter filter(WordStatistic::birkhoff(f), Target::box({{0.2, 0.5}}), 0.0);
  const SimilarityWeights ws({0.4, 0.7});
  const std::vector<double> r{0.4, 0.7};
  for (int n = 1; n <= 10; ++n) {
    const auto rep = level_sum(ws, filter, 0.8, n);
    CHECK_FALSE(rep.grouped);
    const long double brute = oracle::brute_log_level_sum(n, r, 0.8, [&](const oracle::Digits& w) {
      // Fraction of cyclic positions where the symbol changes.
      int changes = 0;
      for (std::size_t j = 0; j < w.size(); ++j) changes += w[j] != w[(j + 1) % w.size()];
      const long double v = static_cast<long double>(changes) / static_cast<long double>(w.size());
      return oracle::interval_distance(v, 0.2, 0.5) <= 1e-12L;
    });
    if (std::isinf(static_cast<double>(brute)))
      CHECK(rep.log_A.is_neg_inf());
    else
      CHECK(rep.log_A.value() == doctest::Approx(static_cast<double>(brute)).epsilon(1e-12));
  }
}

TEST_CASE("partial_zeta examples") {
  const SimilarityWeights ws({0.5, 0.5});
  const auto full = ratio_filter(kUniform, Target::box({{0.0, 5.0}}), 0.0);
  const auto z = partial_zeta(ws, full, 2.0, 16);
  CHECK(z.value == doctest::Approx(1.0 - std::ldexp(1.0, -16)).epsilon(1e-13));
  CHECK_FALSE(z.empty);
  CHECK_FALSE(z.divergent);

  const auto empty = partial_zeta(ws, ratio_filter(kBinomial, Target::point({3.0}), 0.1), 2.0, 12);
  CHECK(empty.empty);
  CHECK(empty.value == 0.0);
  CHECK(empty.log_value.is_neg_inf());

  const auto below = partial_zeta(ws, full, 0.5, 12);
  CHECK(below.divergent);
}

TEST_CASE("abscissa examples") {
  const SimilarityWeights ws({0.5, 0.5});
  const std::vector<int> levels{1, 10, 100, 1000};
  const auto uni = abscissa_estimate(ws, ratio_filter(kUniform, Target::point({1.0}), 0.0), levels);
  for (const auto& l : uni.levels) CHECK(std::abs(l.root.value() - 1.0) < 1e-10);

  const double a1 = alpha(kBinomial, 1.0);
  const auto est = abscissa_estimate(ws, WordStatistic::ratio(kBinomial), Target::point({a1}), 0.05, 4000);
  CHECK(std::abs(est.value.value() - 0.72193) < 0.05);

  for (double r : {0.0, 0.1, 0.3, 0.59}) {
    const auto e = abscissa_estimate(ws, ratio_filter(kBinomial, Target::point({3.0}), r), levels);
    CHECK(e.value.is_neg_inf());
    for (const auto& l : e.levels) CHECK(l.root.is_neg_inf());
  }
}

TEST_CASE("property: full-target roots solve sum r_i^t = 1 at every level") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto model = random_model(rng, 2 + trial % 3);
    const SimilarityWeights ws(std::vector<double>(model.ratios().begin(), model.ratios().end()));
    const std::vector<double> r(model.ratios().begin(), model.ratios().end());
    const double dim = oracle::bisect(
        [&](double t) {
          double s = 0.0;
          for (double x : r) s += std::pow(x, t);
          return s - 1.0;
        },
        0.0, 50.0);
    const auto range = ratio_range(model)[0];
    const auto filter = ratio_filter(model, Target::box({{range.lo - 1.0, range.hi + 1.0}}), 0.0);
    const std::vector<int> levels{3, 30, 200};
    for (const auto& l : abscissa_estimate(ws, filter, levels).levels) CHECK(std::abs(l.root.value() - dim) < 1e-10);
  }
}

TEST_CASE("property: monotone in target and radius") {
  const SimilarityWeights ws({0.5, 0.5});
  const auto stat = WordStatistic::ratio(kBinomial);
  for (int n : {50, 400, 2000}) {
    const auto inner = LevelTable(ws, WordFilter(stat, Target::box({{0.8, 1.0}}), 0.0), n).root();
    const auto outer = LevelTable(ws, WordFilter(stat, Target::box({{0.6, 1.4}}), 0.0), n).root();
    CHECK(inner <= ExtReal(outer.value() + 2 * kRootTolerance));
    ExtReal prev = ExtReal::neg_inf();
    for (double r : {0.0, 0.01, 0.05, 0.2}) {
      const auto t = LevelTable(ws, WordFilter(stat, Target::point({1.1}), r), n).root();
      if (prev.is_finite()) CHECK(prev.value() <= t.value() + 2 * kRootTolerance);
      prev = t;
    }
  }
}

TEST_CASE("property: ratio filters accept u iff they accept u^k") {
  const auto stat = WordStatistic::ratio(IfsModel({0.3, 0.6}, {{0.35, 0.65}}));
  const WordFilter f(stat, Target::box({{0.9, 1.2}}), 0.0);
  for (int n = 1; n <= 6; ++n)
    for_each_word(n, 2, [&](const Word& u) {
      for (int k = 2; k <= 3; ++k) CHECK(f.accepts(u) == f.accepts(u.power(k)));
    });
}

TEST_CASE("shrinking_sweep") {
  const SimilarityWeights ws({0.5, 0.5});
  const std::vector<int> levels{250, 1000};
  const std::vector<double> radii{0.2, 0.1, 0.05};
  const auto uni = shrinking_sweep(ws, WordStatistic::ratio(kUniform), Target::point({1.0}), radii, levels);
  for (const auto& e : uni.estimates) CHECK(std::abs(e.value.value() - 1.0) < 1e-10);
  CHECK(uni.non_increasing);

  const std::vector<double> ladder{0.2, 0.1, 0.05, 0.02};
  const std::vector<int> deep{4000};
  const auto bin = shrinking_sweep(ws, WordStatistic::ratio(kBinomial), Target::point({1.0}), ladder, deep);
  CHECK(bin.non_increasing);
  CHECK(std::abs(bin.estimates.back().value.value() - legendre(kBinomial, 1.0).value.value()) < 0.05);

  const std::vector<double> bad{0.1, 0.2};
  CHECK_THROWS_AS(shrinking_sweep(ws, WordStatistic::ratio(kBinomial), Target::point({1.0}), bad, levels),
                  ConfigError);
  const std::vector<double> zero{0.1, 0.0};
  CHECK_THROWS_AS(shrinking_sweep(ws, WordStatistic::ratio(kBinomial), Target::point({1.0}), zero, levels),
                  ConfigError);
}

TEST_CASE("shrinking to the top of the range approaches the boundary value") {
  const SimilarityWeights ws({0.5, 0.5});
  const double top = ratio_range(kBinomial)[0].hi;
  const auto limit = legendre(kBinomial, top);
  CHECK(limit.boundary);
  const std::vector<double> ladder{0.4, 0.2, 0.1};
  const std::vector<int> deep{2000};
  const auto sweep = shrinking_sweep(ws, WordStatistic::ratio(kBinomial), Target::point({top}), ladder, deep);
  CHECK(sweep.non_increasing);
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    const double expected = legendre_sup(kBinomial, {top - ladder[k], top}).value();
    CHECK(std::abs(sweep.estimates[k].value.value() - expected) < 0.02);
  }
}

TEST_CASE("fixed_target_estimate") {
  const SimilarityWeights ws({0.5, 0.5});
  const std::vector<int> levels = default_levels(2);
  const auto full = fixed_target_estimate(ws, WordStatistic::ratio(kBinomial), Target::box({{0.0, 3.0}}), levels);
  CHECK(std::abs(full.estimate.value.value() - 1.0) < 1e-10);
  CHECK(full.interior_condition);
  CHECK(full.warnings.empty());

  const auto part = fixed_target_estimate(ws, WordStatistic::ratio(kBinomial), Target::box({{0.5, 1.0}}), levels);
  REQUIRE(part.oracle.has_value());
  CHECK(std::abs(part.estimate.value.value() - part.oracle->value()) < 0.02);

  const auto point = fixed_target_estimate(ws, WordStatistic::ratio(kBinomial), Target::point({0.9}), levels);
  CHECK_FALSE(point.interior_condition);
  CHECK_FALSE(point.warnings.empty());
  CHECK(point.estimate.value.is_neg_inf());
}

TEST_CASE("default_levels") {
  CHECK(default_levels(2) == std::vector<int>{250, 500, 1000, 2000, 4000});
  CHECK(default_levels(4).back() == 200);
}
