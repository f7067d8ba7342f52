#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mfzeta/symbolic.hpp"

namespace mfzeta {

/// Distortion constant c >= 1 and the per-symbol bounds s_min, s_max in (0, 1).
struct WeightConstants {
  double distortion = 1.0;
  double s_min = 0.0;
  double s_max = 0.0;
};

/// Assigns a weight s_w in (0, 1) to every finite word. All weights are
/// carried as logarithms.
class WeightSystem {
 public:
  virtual ~WeightSystem() = default;

  [[nodiscard]] virtual int alphabet() const = 0;
  [[nodiscard]] virtual double log_weight(const Word& w) const = 0;
  [[nodiscard]] virtual WeightConstants constants() const = 0;
  /// s_{uv} = s_u s_v for all words.
  [[nodiscard]] virtual bool multiplicative() const = 0;

  /// Per-symbol log weights when the weight depends on symbol counts only
  /// (enables composition grouping); empty otherwise.
  [[nodiscard]] virtual std::span<const double> count_log_weights() const { return {}; }
};

/// s_w = r_{w_1} ... r_{w_n} for contraction ratios r_i in (0, 1).
class SimilarityWeights final : public WeightSystem {
 public:
  explicit SimilarityWeights(std::vector<double> ratios);

  [[nodiscard]] int alphabet() const override { return static_cast<int>(ratios_.size()); }
  [[nodiscard]] double log_weight(const Word& w) const override;
  [[nodiscard]] double log_weight(std::span<const int> counts) const;
  [[nodiscard]] WeightConstants constants() const override;
  [[nodiscard]] bool multiplicative() const override { return true; }
  [[nodiscard]] std::span<const double> count_log_weights() const override { return log_ratios_; }

  [[nodiscard]] std::span<const double> ratios() const { return ratios_; }
  [[nodiscard]] std::span<const double> log_ratios() const { return log_ratios_; }

 private:
  std::vector<double> ratios_;
  std::vector<double> log_ratios_;
};

struct AxiomViolation {
  Word first;
  Word second;
  std::string axiom;
};

struct AxiomReport {
  bool pass = true;
  std::optional<AxiomViolation> violation;
  std::size_t pairs_checked = 0;
};

/// Checks on every sampled pair (u, v), with tolerance `tol` in log space:
///   s_min^|w| <= s_w <= s_max^|w| < 1 for w in {u, v, uv}
///   s_uv <= s_u s_v <= c s_uv
///   s_w < s_parent(w) for w in {u, v, uv} of length >= 2
/// Stops at the first violation.
AxiomReport check_weight_axioms(const WeightSystem& ws, std::span<const std::pair<Word, Word>> sample,
                                double tol = 1e-12);

}  // namespace mfzeta
