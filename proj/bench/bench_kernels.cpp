// Serial reference kernels against their OpenMP versions. Run with
// OMP_NUM_THREADS set to compare thread counts; the results are identical.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "mfzeta/kernels.hpp"
#include "mfzeta/variational.hpp"

using namespace mfzeta;

namespace {

const IfsModel& ternary() {
  static const IfsModel m({0.3, 0.5, 0.2}, {{0.2, 0.5, 0.3}});
  return m;
}

const SimilarityWeights& ternary_weights() {
  static const SimilarityWeights ws({0.3, 0.5, 0.2});
  return ws;
}

WordFilter ratio_filter() { return WordFilter(WordStatistic::ratio(ternary()), Target::box({{0.9, 1.2}}), 0.01); }

WordFilter window_filter() {
  return WordFilter(WordStatistic::birkhoff(KGramTable(3, 2, {0, 1, 1, 1, 0, 1, 1, 1, 0})),
                    Target::box({{0.4, 0.7}}), 0.0);
}

constexpr std::uint64_t kBudget = std::uint64_t{1} << 24;

template <auto Kernel>
void BM_grouped(benchmark::State& state) {
  const auto f = ratio_filter();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(ternary_weights(), f, static_cast<int>(state.range(0))));
}

template <auto Kernel>
void BM_enumerated(benchmark::State& state) {
  const auto f = window_filter();
  for (auto _ : state)
    benchmark::DoNotOptimize(Kernel(ternary_weights(), f, static_cast<int>(state.range(0)), kBudget));
}

template <auto Kernel>
void BM_log_sum(benchmark::State& state) {
  const auto classes = kernels::grouped_classes_serial(ternary_weights(), ratio_filter(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(classes, 0.9));
}

template <auto Kernel>
void BM_coarse(benchmark::State& state) {
  const auto f = ratio_filter();
  const double delta = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(ternary_weights(), f, delta, -200.0));
}

template <auto Kernel>
void BM_prime_sum(benchmark::State& state) {
  const auto f = ratio_filter();
  for (auto _ : state)
    benchmark::DoNotOptimize(Kernel(ternary_weights(), f, 1.5, static_cast<int>(state.range(0)), kBudget));
}

template <Execution E>
void BM_variational(benchmark::State& state) {
  VariationalOptions opt;
  opt.exec = E;
  opt.family = state.range(0) == 0 ? MeasureFamily::bernoulli : MeasureFamily::markov1;
  const auto stat = WordStatistic::ratio(ternary());
  for (auto _ : state)
    benchmark::DoNotOptimize(constrained_sup(ternary_weights(), stat, Target::box({{0.9, 1.2}}), 0.0, opt));
}

}  // namespace

BENCHMARK(BM_grouped<kernels::grouped_classes_serial>)->Name("grouped/serial")->Arg(500)->Arg(1000);
BENCHMARK(BM_grouped<kernels::grouped_classes_omp>)->Name("grouped/omp")->Arg(500)->Arg(1000);
BENCHMARK(BM_enumerated<kernels::enumerated_classes_serial>)->Name("enumerated/serial")->Arg(10)->Arg(12);
BENCHMARK(BM_enumerated<kernels::enumerated_classes_omp>)->Name("enumerated/omp")->Arg(10)->Arg(12);
BENCHMARK(BM_log_sum<kernels::log_sum_serial>)->Name("log_sum/serial")->Arg(1000);
BENCHMARK(BM_log_sum<kernels::log_sum_omp>)->Name("log_sum/omp")->Arg(1000);
BENCHMARK(BM_coarse<kernels::coarse_count_serial>)->Name("coarse/serial")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_coarse<kernels::coarse_count_omp>)->Name("coarse/omp")->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_prime_sum<kernels::prime_sum_serial>)->Name("prime_sum/serial")->Arg(10)->Arg(12);
BENCHMARK(BM_prime_sum<kernels::prime_sum_omp>)->Name("prime_sum/omp")->Arg(10)->Arg(12);
BENCHMARK(BM_variational<Execution::serial>)->Name("variational_grid/serial")->Arg(0)->Arg(1);
BENCHMARK(BM_variational<Execution::parallel>)->Name("variational_grid/omp")->Arg(0)->Arg(1);

BENCHMARK_MAIN();
