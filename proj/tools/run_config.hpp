#pragma once

// Run configuration for the mfzeta command-line tool. Flat INI file:
//
//   [model]      ratios = 0.5, 0.5
//                rows   = 0.2, 0.8 ; 0.5, 0.5     (rows separated by ';')
//   [statistic]  kind = ratio | birkhoff, window = 1, table = 1, 0
//   [target]     spec = box:0.5,1.0
//   [run]        radii, levels, deltas, q_min, q_max, q_step, s, max_len,
//                alphas, seed, family, restarts, mode
//
// Lines starting with ';' or '#' are comments. Unknown sections and keys
// are rejected.

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfzeta/measures.hpp"
#include "mfzeta/statistics.hpp"
#include "mfzeta/targets.hpp"
#include "mfzeta/variational.hpp"

namespace mfzeta::cli {

struct RunConfig {
  std::vector<double> ratios;
  std::vector<std::vector<double>> rows;
  std::string statistic = "ratio";
  int window = 1;
  std::vector<double> table;
  std::optional<std::string> target;
  std::vector<double> radii;
  std::vector<int> levels;
  std::vector<double> deltas;
  double q_min = -10.0;
  double q_max = 10.0;
  double q_step = 0.1;
  double s = 1.6;
  int max_len = 16;
  std::vector<double> alphas;
  std::uint64_t seed = 0;
  std::string family = "bernoulli";
  int restarts = 4;
  std::string mode = "shrink";
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

/// Throws ConfigError when the model section is missing or invalid.
IfsModel make_model(const RunConfig& config);
SimilarityWeights make_weights(const RunConfig& config);
WordStatistic make_statistic(const RunConfig& config);
Target make_target(const RunConfig& config);
MeasureFamily make_family(const RunConfig& config);

/// Checks every section that is present, before any computation.
void validate(const RunConfig& config);

/// Canonical JSON form and its SHA-256 (lower-case hex).
nlohmann::json canonical(const RunConfig& config);
std::string config_hash(const RunConfig& config);

}  // namespace mfzeta::cli
