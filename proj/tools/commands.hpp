#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mfzeta/numeric.hpp"
#include "run_config.hpp"

namespace mfzeta::cli {

inline constexpr int kSchemaVersion = 1;

struct CommandOutput {
  nlohmann::json result;
  std::string csv;  // empty when the command has no tabular form
  std::vector<std::string> warnings;
};

CommandOutput run_spectrum(const RunConfig& config, Execution exec);
/// mode = shrink | fixed.
CommandOutput run_zeta_abscissa(const RunConfig& config, Execution exec);
CommandOutput run_shrink_sweep(const RunConfig& config, Execution exec);
CommandOutput run_coarse(const RunConfig& config, Execution exec);
CommandOutput run_euler(const RunConfig& config, Execution exec);
CommandOutput run_variational(const RunConfig& config, Execution exec);

/// {schema_version, library_version, command, config_hash, config, warnings, result}.
nlohmann::json envelope(const std::string& command, const RunConfig& config, const CommandOutput& output);

/// A finite value as a number, -inf as the string "-inf".
nlohmann::json to_json(const ExtReal& x);

}  // namespace mfzeta::cli
