#include "commands.hpp"

#include <cmath>
#include <cstdio>

#include "mfzeta/coarse.hpp"
#include "mfzeta/euler.hpp"
#include "mfzeta/variational.hpp"
#include "mfzeta/zeta.hpp"

namespace mfzeta::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(const ExtReal& x) { return x.to_string(); }

std::vector<int> levels_or_default(const RunConfig& c, int alphabet) {
  return c.levels.empty() ? default_levels(alphabet) : c.levels;
}

double first_radius(const RunConfig& c, double fallback) { return c.radii.empty() ? fallback : c.radii.front(); }

// sup of beta* over the bounding interval, for ratio statistics with M = 1.
std::optional<ExtReal> legendre_oracle(const WordStatistic& stat, const Target& target) {
  if (!stat.is_ratio() || stat.dimension() != 1 || target.is_empty()) return std::nullopt;
  return legendre_sup(stat.model(), target.bounding_box().front());
}

nlohmann::json gap(const ExtReal& estimate, const std::optional<ExtReal>& oracle) {
  if (!oracle || !estimate.is_finite() || !oracle->is_finite()) return nullptr;
  return estimate.value() - oracle->value();
}

nlohmann::json levels_json(const AbscissaEstimate& e) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& l : e.levels)
    out.push_back({{"n", l.n}, {"root", to_json(l.root)}, {"residual", l.residual}, {"terms", l.terms}});
  return out;
}

nlohmann::json estimate_json(const AbscissaEstimate& e) {
  return {{"value", to_json(e.value)},
          {"levels", levels_json(e)},
          {"monotone", e.monotone},
          {"last_step", e.last_step}};
}

void warn_point_radius_zero(const RunConfig& c, const Target& target, double radius, CommandOutput& out) {
  if (target.kind() == Target::Kind::point && radius == 0.0 && c.statistic == "ratio")
    out.warnings.emplace_back("point target at radius 0: exact ratio matches are non-generic");
}

struct ShrinkRun {
  SweepReport sweep;
  std::vector<std::optional<ExtReal>> oracles;
  std::optional<ExtReal> limit;
};

ShrinkRun shrink(const RunConfig& c, Execution exec) {
  const SimilarityWeights ws = make_weights(c);
  const WordStatistic stat = make_statistic(c);
  const Target target = make_target(c);
  const std::vector<double> radii = c.radii.empty() ? std::vector<double>{0.2, 0.1, 0.05, 0.02} : c.radii;
  const std::vector<int> levels = levels_or_default(c, ws.alphabet());
  ShrinkRun run;
  run.sweep = shrinking_sweep(ws, stat, target, radii, levels, exec);
  for (double r : radii) run.oracles.push_back(legendre_oracle(stat, target.expand(r)));
  run.limit = legendre_oracle(stat, target);
  return run;
}

}  // namespace

nlohmann::json to_json(const ExtReal& x) {
  if (x.is_neg_inf()) return "-inf";
  return x.value();
}

CommandOutput run_spectrum(const RunConfig& c, Execution exec) {
  const IfsModel model = make_model(c);
  const int M = model.dimension();
  std::vector<double> axis;
  const auto steps = static_cast<long>(std::floor((c.q_max - c.q_min) / c.q_step + 1e-9));
  for (long k = 0; k <= steps; ++k) axis.push_back(c.q_min + static_cast<double>(k) * c.q_step);
  std::vector<std::vector<double>> qs;
  std::vector<std::size_t> idx(static_cast<std::size_t>(M), 0);
  while (true) {
    std::vector<double> q(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) q[static_cast<std::size_t>(m)] = axis[idx[static_cast<std::size_t>(m)]];
    qs.push_back(std::move(q));
    int m = M - 1;
    while (m >= 0 && ++idx[static_cast<std::size_t>(m)] == axis.size()) idx[static_cast<std::size_t>(m--)] = 0;
    if (m < 0) break;
    if (qs.size() > 2000000) throw ConfigError("spectrum grid exceeds 2e6 points");
  }
  const auto samples = spectrum_curve(model, qs, exec);

  CommandOutput out;
  nlohmann::json rows = nlohmann::json::array();
  std::string csv;
  for (int m = 0; m < M; ++m) csv += "q" + std::to_string(m + 1) + ",";
  csv += "beta,";
  for (int m = 0; m < M; ++m) csv += "alpha" + std::to_string(m + 1) + ",";
  csv += "f\n";
  for (const auto& s : samples) {
    rows.push_back({{"q", s.q}, {"beta", s.beta}, {"alpha", s.alpha}, {"f", s.f}});
    for (double v : s.q) csv += num(v) + ",";
    csv += num(s.beta) + ",";
    for (double v : s.alpha) csv += num(v) + ",";
    csv += num(s.f) + "\n";
  }
  nlohmann::json range = nlohmann::json::array();
  for (const auto& i : ratio_range(model)) range.push_back({i.lo, i.hi});
  out.result = {{"samples", rows}, {"ratio_range", range}, {"degenerate", model.is_degenerate()}};
  if (model.is_degenerate()) out.warnings.emplace_back("degenerate model: the spectrum is a single point");
  out.csv = std::move(csv);
  return out;
}

CommandOutput run_zeta_abscissa(const RunConfig& c, Execution exec) {
  CommandOutput out;
  if (c.mode == "shrink") {
    const ShrinkRun run = shrink(c, exec);
    nlohmann::json rows = nlohmann::json::array();
    std::string csv = "radius,estimate,oracle,gap\n";
    for (std::size_t k = 0; k < run.sweep.radii.size(); ++k) {
      const auto& e = run.sweep.estimates[k];
      const auto& o = run.oracles[k];
      rows.push_back({{"radius", run.sweep.radii[k]},
                      {"estimate", estimate_json(e)},
                      {"oracle", o ? to_json(*o) : nlohmann::json(nullptr)},
                      {"gap", gap(e.value, o)}});
      const auto g = gap(e.value, o);
      csv += num(run.sweep.radii[k]) + "," + num(e.value) + "," + (o ? num(*o) : "") + "," +
             (g.is_null() ? "" : num(g.get<double>())) + "\n";
    }
    out.result = {{"mode", "shrink"},
                  {"rows", rows},
                  {"non_increasing", run.sweep.non_increasing},
                  {"limit_oracle", run.limit ? to_json(*run.limit) : nlohmann::json(nullptr)}};
    if (!run.sweep.non_increasing) out.warnings.emplace_back("estimates increase as the radius shrinks");
    out.csv = std::move(csv);
    return out;
  }
  const SimilarityWeights ws = make_weights(c);
  const WordStatistic stat = make_statistic(c);
  const Target target = make_target(c);
  const auto report = fixed_target_estimate(ws, stat, target, levels_or_default(c, ws.alphabet()), exec);
  out.warnings = report.warnings;
  out.result = {{"mode", "fixed"},
                {"estimate", estimate_json(report.estimate)},
                {"oracle", report.oracle ? to_json(*report.oracle) : nlohmann::json(nullptr)},
                {"gap", gap(report.estimate.value, report.oracle)},
                {"interior_condition", report.interior_condition}};
  return out;
}

CommandOutput run_shrink_sweep(const RunConfig& c, Execution exec) {
  const ShrinkRun run = shrink(c, exec);
  CommandOutput out;
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "radius,level,root,oracle\n";
  for (std::size_t k = 0; k < run.sweep.radii.size(); ++k) {
    const auto& e = run.sweep.estimates[k];
    const auto& o = run.oracles[k];
    rows.push_back({{"radius", run.sweep.radii[k]},
                    {"estimate", estimate_json(e)},
                    {"oracle", o ? to_json(*o) : nlohmann::json(nullptr)}});
    for (const auto& l : e.levels)
      csv += num(run.sweep.radii[k]) + "," + std::to_string(l.n) + "," + num(l.root) + "," + (o ? num(*o) : "") +
             "\n";
  }
  out.result = {{"rows", rows}, {"non_increasing", run.sweep.non_increasing}};
  if (!run.sweep.non_increasing) out.warnings.emplace_back("estimates increase as the radius shrinks");
  out.csv = std::move(csv);
  return out;
}

CommandOutput run_coarse(const RunConfig& c, Execution exec) {
  const SimilarityWeights ws = make_weights(c);
  const WordStatistic stat = make_statistic(c);
  const Target target = make_target(c);
  const double radius = first_radius(c, 0.0);
  std::vector<double> deltas = c.deltas;
  if (deltas.empty())
    for (int k = 8; k <= 16; ++k) deltas.push_back(std::ldexp(1.0, -k));
  const auto est = coarse_spectrum_estimate(ws, WordFilter(stat, target, radius), deltas, exec);
  CommandOutput out;
  warn_point_radius_zero(c, target, radius, out);
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "delta,count,total,log_count_over_neg_log_delta\n";
  for (const auto& r : est.rows) {
    const ExtReal ratio =
        r.log_count.is_finite() ? ExtReal(r.log_count.value() / r.neg_log_delta) : ExtReal::neg_inf();
    rows.push_back({{"delta", r.count.delta},
                    {"count", r.count.count},
                    {"total", r.count.total},
                    {"log_count", to_json(r.log_count)},
                    {"ratio", to_json(ratio)},
                    {"residual", r.residual}});
    csv += num(r.count.delta) + "," + std::to_string(r.count.count) + "," + std::to_string(r.count.total) + "," +
           num(ratio) + "\n";
  }
  out.result = {{"radius", radius},
                {"slope", to_json(est.slope)},
                {"intercept", est.intercept},
                {"fitted", est.fitted},
                {"rows", rows}};
  out.csv = std::move(csv);
  return out;
}

CommandOutput run_euler(const RunConfig& c, Execution exec) {
  const SimilarityWeights ws = make_weights(c);
  const WordStatistic stat = make_statistic(c);
  const Target target = make_target(c);
  const double radius = first_radius(c, 0.0);
  const auto check = euler_check(ws, WordFilter(stat, target, radius), c.s, c.max_len, exec);
  CommandOutput out;
  if (check.slow_tail) out.warnings.emplace_back("slow tail: s is close to the abscissa");
  out.result = {{"s", check.s},
                {"max_len", check.max_len},
                {"radius", radius},
                {"zeta_trunc", check.zeta_trunc},
                {"prime_form", check.prime_form},
                {"discrepancy", check.discrepancy},
                {"primes_used", check.primes_used},
                {"slow_tail", check.slow_tail}};
  return out;
}

CommandOutput run_variational(const RunConfig& c, Execution exec) {
  const SimilarityWeights ws = make_weights(c);
  const WordStatistic stat = make_statistic(c);
  VariationalOptions opt;
  opt.family = make_family(c);
  opt.seed = c.seed;
  opt.restarts = c.restarts;
  opt.exec = exec;
  auto record = [](const VariationalResult& v) {
    nlohmann::json j = {{"value", to_json(v.value)},
                        {"feasible", v.feasible},
                        {"stationary", v.stationary},
                        {"image", v.image},
                        {"distance", v.distance},
                        {"grid_points", v.grid_points}};
    if (!v.transition.empty()) j["transition"] = v.transition;
    return j;
  };
  CommandOutput out;
  if (!c.alphas.empty()) {
    if (!stat.is_ratio() || stat.dimension() != 1) throw ConfigError("alphas need a ratio statistic with one row");
    const double radius = first_radius(c, 1e-3);
    nlohmann::json rows = nlohmann::json::array();
    std::string csv = "alpha,constrained_sup,legendre,gap\n";
    for (double a : c.alphas) {
      const auto v = constrained_sup(ws, stat, Target::point({a}), radius, opt);
      const ExtReal leg = legendre(stat.model(), a).value;
      const auto g = gap(v.value, leg);
      rows.push_back({{"alpha", a}, {"result", record(v)}, {"legendre", to_json(leg)}, {"gap", g}});
      csv += num(a) + "," + num(v.value) + "," + num(leg) + "," + (g.is_null() ? "" : num(g.get<double>())) + "\n";
    }
    out.result = {{"radius", radius}, {"rows", rows}};
    out.csv = std::move(csv);
    return out;
  }
  const Target target = make_target(c);
  const double radius = first_radius(c, 0.0);
  const auto v = constrained_sup(ws, stat, target, radius, opt);
  out.result = {{"radius", radius}, {"result", record(v)}};
  if (!v.feasible) out.warnings.emplace_back("no measure in the family is feasible");
  return out;
}

nlohmann::json envelope(const std::string& command, const RunConfig& config, const CommandOutput& output) {
  return {{"schema_version", kSchemaVersion},
          {"library_version", MFZETA_VERSION},
          {"command", command},
          {"config_hash", config_hash(config)},
          {"config", canonical(config)},
          {"warnings", output.warnings},
          {"result", output.result}};
}

}  // namespace mfzeta::cli
