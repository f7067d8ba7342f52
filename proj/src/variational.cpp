#include "mfzeta/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include <Eigen/Dense>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "mfzeta/parallel.hpp"

namespace mfzeta {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_distribution(std::span<const double> p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || v > 1.0) throw ConfigError(std::string(what) + " entries must lie in [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ConfigError(std::string(what) + " must sum to 1");
}

std::vector<double> stationary_vector(const std::vector<std::vector<double>>& P) {
  const auto n = static_cast<Eigen::Index>(P.size());
  Eigen::MatrixXd A(n + 1, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      A(b, a) = P[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] - (a == b ? 1.0 : 0.0);
  A.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  const Eigen::VectorXd x = A.completeOrthogonalDecomposition().solve(rhs);
  std::vector<double> pi(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    pi[static_cast<std::size_t>(a)] = std::max(0.0, x(a));
    sum += pi[static_cast<std::size_t>(a)];
  }
  for (double& v : pi) v /= sum;
  return pi;
}

// Expectation of a k-gram table under the chain started from pi.
double kgram_expectation(const KGramTable& f, std::span<const double> pi,
                         const std::vector<std::vector<double>>& P) {
  double total = 0.0;
  for_each_word(f.window(), f.alphabet(), [&](const Word& g) {
    double mass = pi[g[0]];
    for (std::size_t i = 1; i < g.size() && mass > 0.0; ++i) mass *= P[g[i - 1]][g[i]];
    if (mass > 0.0) total += mass * f.at(g.symbols());
  });
  return total;
}

std::vector<double> image_of(const WordStatistic& stat, std::span<const double> pi,
                             const std::vector<std::vector<double>>& P) {
  if (stat.alphabet() != static_cast<int>(pi.size())) throw ConfigError("measure and statistic alphabets differ");
  if (stat.is_ratio()) {
    const IfsModel& model = stat.model();
    double den = 0.0;
    for (std::size_t j = 0; j < pi.size(); ++j) den += pi[j] * model.log_ratios()[j];
    std::vector<double> out(static_cast<std::size_t>(model.dimension()));
    for (int m = 0; m < model.dimension(); ++m) {
      double num = 0.0;
      for (std::size_t j = 0; j < pi.size(); ++j) num += pi[j] * model.log_row(m)[j];
      out[static_cast<std::size_t>(m)] = num / den;
    }
    return out;
  }
  return {kgram_expectation(stat.table(), pi, P)};
}

double log_weight_mean(std::span<const double> pi, std::span<const double> ratios) {
  if (pi.size() != ratios.size()) throw ConfigError("measure and ratio alphabets differ");
  double lam = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j) lam += pi[j] * std::log(ratios[j]);
  return lam;
}

std::vector<std::vector<double>> bernoulli_rows(std::span<const double> pi) {
  return std::vector<std::vector<double>>(pi.size(), std::vector<double>(pi.begin(), pi.end()));
}

// A point of the search family: one probability row (Bernoulli) or N rows
// (Markov transition matrix).
struct Candidate {
  std::vector<std::vector<double>> rows;
};

struct Evaluation {
  double value = -std::numeric_limits<double>::infinity();
  double distance = std::numeric_limits<double>::infinity();
  std::vector<double> stationary;
  std::vector<double> image;
};

class Problem {
 public:
  Problem(const SimilarityWeights& ws, const WordStatistic& stat, const Target& target, double radius,
          MeasureFamily family)
      : ratios_(ws.ratios().begin(), ws.ratios().end()), stat_(stat), target_(target), radius_(radius),
        family_(family) {}

  [[nodiscard]] Evaluation evaluate(const Candidate& c) const {
    Evaluation e;
    double h = 0.0;
    std::vector<std::vector<double>> P;
    if (family_ == MeasureFamily::bernoulli) {
      e.stationary = c.rows.front();
      for (double v : e.stationary) h -= xlogx(v);
      P = bernoulli_rows(e.stationary);
    } else {
      P = c.rows;
      e.stationary = stationary_vector(P);
      for (std::size_t a = 0; a < P.size(); ++a) {
        double row = 0.0;
        for (double v : P[a]) row -= xlogx(v);
        h += e.stationary[a] * row;
      }
    }
    e.value = -h / log_weight_mean(e.stationary, ratios_);
    e.image = image_of(stat_, e.stationary, P);
    e.distance = target_.distance(e.image);
    return e;
  }

  [[nodiscard]] bool feasible(const Evaluation& e) const { return e.distance <= radius_ + kFeasibilityTolerance; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] MeasureFamily family() const { return family_; }
  [[nodiscard]] int alphabet() const { return static_cast<int>(ratios_.size()); }

 private:
  std::vector<double> ratios_;
  const WordStatistic& stat_;
  const Target& target_;
  double radius_;
  MeasureFamily family_;
};

// Simplex grid over each row with `units` steps; Markov candidates take the
// product of row grids in mixed radix.
class Grid {
 public:
  Grid(int alphabet, MeasureFamily family) : alphabet_(alphabet), family_(family) {
    int units = 0;
    if (family == MeasureFamily::bernoulli) {
      units = alphabet == 2 ? 1000 : alphabet == 3 ? 100 : 20;
      while (units > 2 && simplex_count(units) > 200000) --units;
    } else {
      if (alphabet > 3) throw ConfigError("markov family supports alphabets up to 3");
      units = alphabet == 2 ? 100 : 10;
    }
    for_each_count_vector(units, alphabet, [&](std::span<const int> counts) {
      std::vector<double> row(counts.size());
      for (std::size_t j = 0; j < counts.size(); ++j) row[j] = static_cast<double>(counts[j]) / units;
      row_grid_.push_back(std::move(row));
    });
    rows_ = family == MeasureFamily::bernoulli ? 1 : alphabet;
    size_ = 1;
    for (int r = 0; r < rows_; ++r) size_ *= row_grid_.size();
  }

  [[nodiscard]] std::size_t size() const { return size_; }

  [[nodiscard]] Candidate at(std::size_t index) const {
    Candidate c;
    c.rows.resize(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
      c.rows[static_cast<std::size_t>(r)] = row_grid_[index % row_grid_.size()];
      index /= row_grid_.size();
    }
    return c;
  }

 private:
  [[nodiscard]] double simplex_count(int units) const {
    // C(units + N - 1, N - 1)
    return std::exp(std::lgamma(units + alphabet_) - std::lgamma(units + 1.0) - std::lgamma(alphabet_ * 1.0));
  }

  int alphabet_;
  MeasureFamily family_;
  int rows_ = 1;
  std::size_t size_ = 0;
  std::vector<std::vector<double>> row_grid_;
};

struct GridBest {
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  bool any_feasible = false;
  std::size_t nearest = 0;
  double nearest_distance = std::numeric_limits<double>::infinity();

  void offer(std::size_t index, const Evaluation& e, bool feasible) {
    if (feasible && (!any_feasible || e.value > best_value)) {
      any_feasible = true;
      best = index;
      best_value = e.value;
    }
    if (e.distance < nearest_distance) {
      nearest = index;
      nearest_distance = e.distance;
    }
  }

  void merge(const GridBest& o) {
    if (o.any_feasible && (!any_feasible || o.best_value > best_value)) {
      any_feasible = true;
      best = o.best;
      best_value = o.best_value;
    }
    if (o.nearest_distance < nearest_distance) {
      nearest = o.nearest;
      nearest_distance = o.nearest_distance;
    }
  }
};

GridBest scan_grid(const Problem& problem, const Grid& grid, Execution exec) {
  GridBest out;
  if (exec == Execution::serial) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const Evaluation e = problem.evaluate(grid.at(k));
      out.offer(k, e, problem.feasible(e));
    }
    return out;
  }
  const auto total = static_cast<std::ptrdiff_t>(grid.size());
  const std::ptrdiff_t chunks = std::min<std::ptrdiff_t>(kReductionChunks, total);
  std::vector<GridBest> parts(static_cast<std::size_t>(chunks));
  omp_for(chunks, [&](std::ptrdiff_t c) {
    const auto range = chunk_range(total, chunks, c);
    auto& part = parts[static_cast<std::size_t>(c)];
    for (std::ptrdiff_t k = range.begin; k < range.end; ++k) {
      const Evaluation e = problem.evaluate(grid.at(static_cast<std::size_t>(k)));
      part.offer(static_cast<std::size_t>(k), e, problem.feasible(e));
    }
  });
  for (const auto& p : parts) out.merge(p);
  return out;
}

// Unconstrained coordinates for a row around a reference symbol:
// pi_j = x_j^2 / (1 + sum x^2) for j != ref, pi_ref = 1 / (1 + sum x^2).
class Parametrization {
 public:
  explicit Parametrization(const Candidate& seed) {
    for (const auto& row : seed.rows) {
      const auto ref = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
      refs_.push_back(ref);
      for (std::size_t j = 0; j < row.size(); ++j)
        if (j != ref) x0_.push_back(std::sqrt(row[j] / row[ref]));
      width_ = row.size();
    }
  }

  [[nodiscard]] const std::vector<double>& seed() const { return x0_; }

  [[nodiscard]] Candidate decode(const double* x) const {
    Candidate c;
    std::size_t k = 0;
    for (std::size_t ref : refs_) {
      std::vector<double> row(width_, 0.0);
      double norm = 1.0;
      for (std::size_t j = 0; j < width_; ++j) {
        if (j == ref) continue;
        row[j] = x[k] * x[k];
        norm += row[j];
        ++k;
      }
      row[ref] = 1.0;
      for (double& v : row) v /= norm;
      c.rows.push_back(std::move(row));
    }
    return c;
  }

 private:
  std::vector<std::size_t> refs_;
  std::vector<double> x0_;
  std::size_t width_ = 0;
};

enum class Goal { maximize, reach };

struct MinimizerContext {
  const Problem* problem;
  const Parametrization* param;
  Goal goal;
};

constexpr double kPenalty = 1e3;

double nm_objective(const gsl_vector* v, void* params) {
  const auto* ctx = static_cast<const MinimizerContext*>(params);
  const Evaluation e = ctx->problem->evaluate(ctx->param->decode(v->data));
  if (ctx->goal == Goal::reach) return e.distance;
  return -e.value + kPenalty * std::max(0.0, e.distance - ctx->problem->radius());
}

Candidate nelder_mead(const Problem& problem, const Parametrization& param, std::vector<double> start, Goal goal) {
  const std::size_t n = start.size();
  MinimizerContext ctx{&problem, &param, goal};
  gsl_multimin_function fn{&nm_objective, n, &ctx};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(n), &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(n), &gsl_vector_free);
  for (std::size_t k = 0; k < n; ++k) {
    gsl_vector_set(x.get(), k, start[k]);
    gsl_vector_set(step.get(), k, 0.05);
  }
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> nm(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), &gsl_multimin_fminimizer_free);
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  if (gsl_multimin_fminimizer_set(nm.get(), &fn, x.get(), step.get()) == GSL_SUCCESS) {
    for (int iter = 0; iter < 5000; ++iter) {
      if (gsl_multimin_fminimizer_iterate(nm.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm.get()), 1e-12) == GSL_SUCCESS) break;
    }
    const gsl_vector* best = gsl_multimin_fminimizer_x(nm.get());
    start.assign(best->data, best->data + n);
  }
  gsl_set_error_handler(old);
  return param.decode(start.data());
}

Candidate mix(const Candidate& a, const Candidate& b, double t) {
  Candidate c = a;
  for (std::size_t r = 0; r < c.rows.size(); ++r)
    for (std::size_t j = 0; j < c.rows[r].size(); ++j) c.rows[r][j] = (1.0 - t) * a.rows[r][j] + t * b.rows[r][j];
  return c;
}

// Moves from a feasible point toward `target` as far as feasibility allows.
Candidate polish(const Problem& problem, const Candidate& feasible, const Candidate& target) {
  if (problem.feasible(problem.evaluate(target))) return target;
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (problem.feasible(problem.evaluate(mix(feasible, target, mid))))
      lo = mid;
    else
      hi = mid;
  }
  return mix(feasible, target, lo);
}

}  // namespace

BernoulliMeasure::BernoulliMeasure(std::vector<double> pi) : pi_(std::move(pi)) {
  if (pi_.size() < 2) throw ConfigError("measure needs at least two symbols");
  check_distribution(pi_, "probability vector");
}

double BernoulliMeasure::entropy() const {
  double h = 0.0;
  for (double v : pi_) h -= xlogx(v);
  return h;
}

MarkovMeasure::MarkovMeasure(std::vector<std::vector<double>> transition) : transition_(std::move(transition)) {
  if (transition_.size() < 2) throw ConfigError("measure needs at least two symbols");
  for (const auto& row : transition_) {
    if (row.size() != transition_.size()) throw ConfigError("transition matrix must be square");
    check_distribution(row, "transition row");
  }
  stationary_ = stationary_vector(transition_);
}

double MarkovMeasure::entropy() const {
  double h = 0.0;
  for (std::size_t a = 0; a < transition_.size(); ++a) {
    double row = 0.0;
    for (double v : transition_[a]) row -= xlogx(v);
    h += stationary_[a] * row;
  }
  return h;
}

double dimension_functional(const BernoulliMeasure& m, std::span<const double> ratios) {
  return -m.entropy() / log_weight_mean(m.pi(), ratios);
}

double dimension_functional(const MarkovMeasure& m, std::span<const double> ratios) {
  return -m.entropy() / log_weight_mean(m.stationary(), ratios);
}

std::vector<double> measure_image(const WordStatistic& stat, const BernoulliMeasure& m) {
  return image_of(stat, m.pi(), bernoulli_rows(m.pi()));
}

std::vector<double> measure_image(const WordStatistic& stat, const MarkovMeasure& m) {
  return image_of(stat, m.stationary(), m.transition());
}

VariationalResult constrained_sup(const SimilarityWeights& ws, const WordStatistic& stat, const Target& target,
                                  double radius, const VariationalOptions& options) {
  if (!(radius >= 0.0)) throw ConfigError("radius must be >= 0");
  if (ws.alphabet() != stat.alphabet()) throw ConfigError("weight system and statistic use different alphabets");
  if (target.dimension() != stat.dimension()) throw ConfigError("target and statistic dimensions differ");
  if (options.restarts < 0) throw ConfigError("restarts must be >= 0");

  VariationalResult out;
  out.family = options.family;
  const Problem problem(ws, stat, target, radius, options.family);
  const Grid grid(ws.alphabet(), options.family);
  out.grid_points = grid.size();

  auto report = [&](const Candidate& c, const Evaluation& e) {
    out.stationary = e.stationary;
    out.image = e.image;
    out.distance = e.distance;
    if (options.family == MeasureFamily::markov1) out.transition = c.rows;
  };

  if (target.is_empty()) return out;
  const GridBest scan = scan_grid(problem, grid, options.exec);

  Candidate seed;
  if (scan.any_feasible) {
    seed = grid.at(scan.best);
  } else {
    // No feasible grid point: minimize the distance from the nearest one.
    const Candidate near = grid.at(scan.nearest);
    const Parametrization param(near);
    const Candidate reached = nelder_mead(problem, param, param.seed(), Goal::reach);
    const Evaluation e = problem.evaluate(reached);
    if (!problem.feasible(e)) {
      const Evaluation en = problem.evaluate(near);
      if (en.distance <= e.distance)
        report(near, en);
      else
        report(reached, e);
      return out;
    }
    seed = reached;
  }

  Candidate best = seed;
  Evaluation best_eval = problem.evaluate(seed);
  auto consider = [&](const Candidate& c) {
    const Evaluation e = problem.evaluate(c);
    if (problem.feasible(e) && e.value > best_eval.value) {
      best = c;
      best_eval = e;
    }
  };

  const Parametrization param(seed);
  consider(polish(problem, seed, nelder_mead(problem, param, param.seed(), Goal::maximize)));
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> jitter(0.0, 0.25);
  for (int k = 0; k < options.restarts; ++k) {
    const Parametrization around(best);
    std::vector<double> start = around.seed();
    for (double& v : start) v += jitter(rng);
    consider(polish(problem, best, nelder_mead(problem, around, start, Goal::maximize)));
  }

  out.feasible = true;
  out.value = ExtReal(best_eval.value);
  report(best, best_eval);
  return out;
}

}  // namespace mfzeta
