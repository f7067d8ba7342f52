#include "mfzeta/statistics.hpp"

namespace mfzeta {

WordStatistic WordStatistic::ratio(IfsModel model) { return WordStatistic(std::move(model)); }

WordStatistic WordStatistic::birkhoff(KGramTable table) { return WordStatistic(std::move(table)); }

int WordStatistic::alphabet() const {
  if (auto* m = std::get_if<IfsModel>(&kind_)) return m->alphabet();
  return std::get<KGramTable>(kind_).alphabet();
}

int WordStatistic::dimension() const {
  if (auto* m = std::get_if<IfsModel>(&kind_)) return m->dimension();
  return 1;
}

bool WordStatistic::composition_measurable() const {
  if (is_ratio()) return true;
  return std::get<KGramTable>(kind_).window() == 1;
}

std::vector<double> WordStatistic::value(const Word& w) const {
  w.validate(alphabet());
  if (auto* m = std::get_if<IfsModel>(&kind_)) return value_on_composition(composition_of(w, m->alphabet()));
  return {cyclic_birkhoff_average(w, std::get<KGramTable>(kind_))};
}

std::vector<double> WordStatistic::value_on_composition(std::span<const int> counts) const {
  if (static_cast<int>(counts.size()) != alphabet()) throw ConfigError("composition has the wrong alphabet size");
  if (auto* m = std::get_if<IfsModel>(&kind_)) {
    auto log_r = m->log_ratios();
    double den = 0.0;
    for (std::size_t j = 0; j < counts.size(); ++j) den += counts[j] * log_r[j];
    if (den == 0.0) throw ConfigError("empty composition");
    std::vector<double> out(static_cast<std::size_t>(m->dimension()));
    for (int row = 0; row < m->dimension(); ++row) {
      auto lp = m->log_row(row);
      double num = 0.0;
      for (std::size_t j = 0; j < counts.size(); ++j) num += counts[j] * lp[j];
      out[static_cast<std::size_t>(row)] = num / den;
    }
    return out;
  }
  const auto& f = std::get<KGramTable>(kind_);
  if (f.window() != 1) throw ConfigError("birkhoff statistics with window >= 2 are not composition-measurable");
  double num = 0.0;
  int n = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    num += counts[j] * f.values()[j];
    n += counts[j];
  }
  if (n == 0) throw ConfigError("empty composition");
  return {num / n};
}

double WordStatistic::slack(int n) const {
  if (n < 1) throw ConfigError("slack needs n >= 1");
  if (composition_measurable()) return 0.0;
  const auto& f = std::get<KGramTable>(kind_);
  return 2.0 * f.max_abs() * (f.window() - 1) / n;
}

const IfsModel& WordStatistic::model() const {
  if (auto* m = std::get_if<IfsModel>(&kind_)) return *m;
  throw ConfigError("statistic is not a ratio statistic");
}

const KGramTable& WordStatistic::table() const {
  if (auto* t = std::get_if<KGramTable>(&kind_)) return *t;
  throw ConfigError("statistic is not a birkhoff statistic");
}

double linear_birkhoff_average(const Word& extended, const KGramTable& f) {
  const auto k = static_cast<std::size_t>(f.window());
  if (extended.size() < k) throw ConfigError("word shorter than the window");
  const std::size_t n = extended.size() - (k - 1);
  auto syms = extended.symbols();
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += f.at(syms.subspan(j, k));
  return sum / static_cast<double>(n);
}

}  // namespace mfzeta
