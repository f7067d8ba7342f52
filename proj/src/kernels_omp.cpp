// OpenMP kernels. Each mirrors the serial reference in kernels_serial.cpp.

#include <algorithm>

#include "mfzeta/kernels.hpp"
#include "mfzeta/parallel.hpp"

namespace mfzeta::kernels {

namespace {

void append(LevelClasses& into, const LevelClasses& part) {
  into.log_multiplicity.insert(into.log_multiplicity.end(), part.log_multiplicity.begin(),
                               part.log_multiplicity.end());
  into.log_weight.insert(into.log_weight.end(), part.log_weight.begin(), part.log_weight.end());
  into.inspected += part.inspected;
}

LevelClasses concat(const std::vector<LevelClasses>& parts) {
  LevelClasses out;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  out.log_multiplicity.reserve(total);
  out.log_weight.reserve(total);
  for (const auto& p : parts) append(out, p);
  return out;
}

}  // namespace

LevelClasses grouped_classes_omp(const WeightSystem& ws, const WordFilter& filter, int n) {
  detail::check_level_inputs(ws, filter, n);
  if (ws.count_log_weights().empty()) throw ConfigError("weight system is not composition-measurable");
  if (!filter.statistic().composition_measurable()) throw ConfigError("statistic is not composition-measurable");
  if (filter.trivially_empty()) return {};

  // Outer index j walks counts[0] = n, n-1, ..., 0 like the serial order.
  const std::ptrdiff_t outer = n + 1;
  const std::ptrdiff_t chunks = std::min<std::ptrdiff_t>(kReductionChunks, outer);
  std::vector<LevelClasses> parts(static_cast<std::size_t>(chunks));
  omp_for(chunks, [&](std::ptrdiff_t c) {
    const auto range = chunk_range(outer, chunks, c);
    auto& part = parts[static_cast<std::size_t>(c)];
    for (std::ptrdiff_t j = range.begin; j < range.end; ++j) {
      const int first = n - static_cast<int>(j);
      detail::for_each_tail(first, n, ws.alphabet(), [&](std::span<const int> counts) {
        detail::push_grouped_class(ws, filter, n, counts, part);
      });
    }
  });
  return concat(parts);
}

LevelClasses enumerated_classes_omp(const WeightSystem& ws, const WordFilter& filter, int n,
                                    std::uint64_t budget) {
  detail::check_level_inputs(ws, filter, n);
  const auto total = static_cast<std::ptrdiff_t>(word_count(n, ws.alphabet(), budget));
  if (filter.trivially_empty()) return {};
  const std::ptrdiff_t chunks = std::min<std::ptrdiff_t>(kReductionChunks, total);
  std::vector<LevelClasses> parts(static_cast<std::size_t>(chunks));
  omp_for(chunks, [&](std::ptrdiff_t c) {
    const auto range = chunk_range(total, chunks, c);
    auto& part = parts[static_cast<std::size_t>(c)];
    for (std::ptrdiff_t idx = range.begin; idx < range.end; ++idx) {
      const Word w = word_at(static_cast<std::uint64_t>(idx), n, ws.alphabet());
      ++part.inspected;
      if (!filter.accepts(w)) continue;
      part.log_multiplicity.push_back(0.0);
      part.log_weight.push_back(ws.log_weight(w));
    }
  });
  return concat(parts);
}

ExtReal log_sum_omp(const LevelClasses& classes, double t) {
  const auto total = static_cast<std::ptrdiff_t>(classes.size());
  if (total == 0) return ExtReal::neg_inf();
  const std::ptrdiff_t chunks = std::min<std::ptrdiff_t>(kReductionChunks, total);
  std::vector<LogSumExp> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const auto range = chunk_range(total, chunks, c);
    LogSumExp acc;
    for (std::ptrdiff_t k = range.begin; k < range.end; ++k)
      acc.add(classes.log_multiplicity[static_cast<std::size_t>(k)] + t * classes.log_weight[static_cast<std::size_t>(k)]);
    parts[static_cast<std::size_t>(c)] = acc;
  }
  LogSumExp out;
  for (const auto& p : parts) out.merge(p);
  return out.value();
}

StoppingCount coarse_count_omp(const WeightSystem& ws, const WordFilter& filter, double delta, double log_floor) {
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (std::log(delta) < log_floor) throw BudgetError("delta is below the configured floor");
  if (ws.alphabet() != filter.statistic().alphabet())
    throw ConfigError("weight system and statistic use different alphabets");
  const double log_delta = std::log(delta);
  const double threshold = log_delta + detail::kStopTolerance * std::abs(log_delta);
  const bool grouped = filter.statistic().composition_measurable();

  // Breadth-first expansion to a frontier of unstopped prefixes; words that
  // stop above the frontier are counted here.
  struct Node {
    std::vector<Symbol> path;
    double log_weight;
  };
  StoppingCount head;
  std::vector<Node> frontier{{{}, 0.0}};
  const std::size_t target_width = 4 * static_cast<std::size_t>(kReductionChunks);
  while (!frontier.empty() && frontier.size() < target_width) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      for (int sym = 0; sym < ws.alphabet(); ++sym) {
        std::vector<Symbol> path = node.path;
        path.push_back(static_cast<Symbol>(sym));
        const auto lr = ws.count_log_weights();
        const double lw = lr.empty() ? ws.log_weight(Word(path)) : node.log_weight + lr[static_cast<std::size_t>(sym)];
        if (lw <= threshold) {
          ++head.total;
          const Word w(path);
          const bool pass = grouped ? filter.accepts_counts(composition_of(w, ws.alphabet()), static_cast<int>(path.size()))
                                    : filter.accepts(w);
          if (pass) ++head.accepted;
        } else {
          next.push_back({std::move(path), lw});
        }
      }
    }
    frontier = std::move(next);
  }

  const auto width = static_cast<std::ptrdiff_t>(frontier.size());
  std::vector<StoppingCount> parts(frontier.size());
  omp_for(width, [&](std::ptrdiff_t k) {
    const auto& node = frontier[static_cast<std::size_t>(k)];
    parts[static_cast<std::size_t>(k)] = detail::stopping_subtree(ws, filter, node.path, node.log_weight, log_delta);
  });
  for (const auto& p : parts) {
    head.accepted += p.accepted;
    head.total += p.total;
  }
  return head;
}

PrimeSum prime_sum_omp(const WeightSystem& ws, const WordFilter& filter, double s, int max_len,
                       std::uint64_t budget) {
  detail::check_level_inputs(ws, filter, max_len);
  std::uint64_t grand = 0;
  for (int len = 1; len <= max_len; ++len) grand += word_count(len, ws.alphabet(), budget);
  if (grand > budget) throw BudgetError("prime enumeration exceeds the word budget");
  PrimeSum out;
  if (filter.trivially_empty()) return out;
  for (int len = 1; len <= max_len; ++len) {
    const auto total = static_cast<std::ptrdiff_t>(word_count(len, ws.alphabet(), budget));
    const std::ptrdiff_t chunks = std::min<std::ptrdiff_t>(kReductionChunks, total);
    std::vector<PrimeSum> parts(static_cast<std::size_t>(chunks));
    omp_for(chunks, [&](std::ptrdiff_t c) {
      const auto range = chunk_range(total, chunks, c);
      auto& part = parts[static_cast<std::size_t>(c)];
      for (std::ptrdiff_t idx = range.begin; idx < range.end; ++idx) {
        const Word w = word_at(static_cast<std::uint64_t>(idx), len, ws.alphabet());
        if (!is_prime(w) || !filter.accepts(w)) continue;
        part.value += 1.0 / std::expm1(-s * ws.log_weight(w));
        ++part.primes;
      }
    });
    for (const auto& p : parts) {
      out.value += p.value;
      out.primes += p.primes;
    }
  }
  return out;
}

}  // namespace mfzeta::kernels
