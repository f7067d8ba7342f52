#include "mfzeta/weights.hpp"

#include <algorithm>
#include <cmath>

namespace mfzeta {

SimilarityWeights::SimilarityWeights(std::vector<double> ratios) : ratios_(std::move(ratios)) {
  check_alphabet(static_cast<int>(ratios_.size()));
  log_ratios_.reserve(ratios_.size());
  for (double r : ratios_) {
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("contraction ratios must lie in (0, 1)");
    log_ratios_.push_back(std::log(r));
  }
}

double SimilarityWeights::log_weight(const Word& w) const {
  double acc = 0.0;
  for (Symbol s : w.symbols()) {
    if (s >= ratios_.size()) throw ConfigError("symbol outside alphabet");
    acc += log_ratios_[s];
  }
  return acc;
}

double SimilarityWeights::log_weight(std::span<const int> counts) const {
  if (counts.size() != log_ratios_.size()) throw ConfigError("composition has the wrong alphabet size");
  double acc = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) acc += counts[j] * log_ratios_[j];
  return acc;
}

WeightConstants SimilarityWeights::constants() const {
  auto [lo, hi] = std::minmax_element(ratios_.begin(), ratios_.end());
  return WeightConstants{1.0, *lo, *hi};
}

AxiomReport check_weight_axioms(const WeightSystem& ws, std::span<const std::pair<Word, Word>> sample,
                                double tol) {
  if (sample.empty()) throw ConfigError("check_weight_axioms needs a non-empty sample");
  const WeightConstants k = ws.constants();
  AxiomReport report;

  auto fail = [&](const Word& a, const Word& b, std::string what) {
    report.pass = false;
    report.violation = AxiomViolation{a, b, std::move(what)};
    return report;
  };

  if (!(k.s_max < 1.0)) return fail(sample.front().first, sample.front().second, "s_max < 1");
  if (!(k.s_min > 0.0)) return fail(sample.front().first, sample.front().second, "s_min > 0");
  if (!(k.distortion >= 1.0)) return fail(sample.front().first, sample.front().second, "c >= 1");
  const double log_min = std::log(k.s_min);
  const double log_max = std::log(k.s_max);
  const double log_c = std::log(k.distortion);

  auto bounds_ok = [&](const Word& w) {
    const double lw = ws.log_weight(w);
    const double n = static_cast<double>(w.size());
    return n * log_min <= lw + tol && lw <= n * log_max + tol && lw < 0.0;
  };
  auto parent_ok = [&](const Word& w) { return w.size() < 2 || ws.log_weight(w) < ws.log_weight(w.parent()); };

  for (const auto& [u, v] : sample) {
    u.validate(ws.alphabet());
    v.validate(ws.alphabet());
    const Word uv = u.concat(v);
    for (const Word* w : {&u, &v, &uv}) {
      if (!bounds_ok(*w)) return fail(u, v, "s_min^n <= s_w <= s_max^n < 1 for " + w->to_string());
      if (!parent_ok(*w)) return fail(u, v, "s_w < s_parent for " + w->to_string());
    }
    const double l_uv = ws.log_weight(uv);
    const double l_prod = ws.log_weight(u) + ws.log_weight(v);
    if (l_uv > l_prod + tol) return fail(u, v, "s_uv <= s_u s_v");
    if (l_prod > log_c + l_uv + tol) return fail(u, v, "s_u s_v <= c s_uv");
    ++report.pairs_checked;
  }
  return report;
}

}  // namespace mfzeta
