// mfzeta: command-line front end. See README.md for the config format.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using mfzeta::cli::CommandOutput;
using mfzeta::cli::RunConfig;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string model;
  std::string target;
  std::string radius;
  std::string levels;
  std::string out;
  std::string format = "json";
  std::string mode;
  bool serial = false;
};

void add_options(CLI::App* sub, Options& o, bool with_mode) {
  sub->add_option("--model", o.model, "INI run configuration")->required();
  sub->add_option("--target", o.target, "target spec, e.g. point:1.0, box:0.5,1.0, ball:0.7,0.1");
  sub->add_option("--radius", o.radius, "comma-separated radii");
  sub->add_option("--levels", o.levels, "comma-separated word lengths");
  sub->add_option("--out", o.out, "output directory (writes <command>.json and, if tabular, <command>.csv)");
  sub->add_option("--format", o.format, "stdout format when --out is absent")
      ->check(CLI::IsMember({"json", "csv"}));
  if (with_mode) sub->add_option("--mode", o.mode, "shrink or fixed")->check(CLI::IsMember({"shrink", "fixed"}));
  sub->add_flag("--serial", o.serial, "use the serial reference kernels");
}

RunConfig effective_config(const Options& o) {
  RunConfig c = mfzeta::cli::load_config(o.model);
  if (!o.target.empty()) c.target = o.target;
  if (!o.radius.empty()) c.radii = mfzeta::cli::parse_real_list(o.radius);
  if (!o.levels.empty()) c.levels = mfzeta::cli::parse_int_list(o.levels);
  if (!o.mode.empty()) c.mode = o.mode;
  mfzeta::cli::validate(c);
  return c;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw mfzeta::ConfigError("cannot write " + path.string());
  f << text;
  if (!f) throw mfzeta::ConfigError("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multifractal zeta-functions of self-similar measures"};
  app.set_version_flag("--version", MFZETA_VERSION);
  app.require_subcommand(1);

  using Runner = std::function<CommandOutput(const RunConfig&, mfzeta::Execution)>;
  const std::map<std::string, std::pair<std::string, Runner>> commands{
      {"spectrum", {"beta, alpha and f on a q grid", mfzeta::cli::run_spectrum}},
      {"zeta-abscissa", {"abscissa estimate for shrinking or fixed targets", mfzeta::cli::run_zeta_abscissa}},
      {"shrink-sweep", {"per-level roots along a radius ladder", mfzeta::cli::run_shrink_sweep}},
      {"coarse", {"stopping-set counts and coarse slope", mfzeta::cli::run_coarse}},
      {"euler", {"zeta sum against the prime-word sum", mfzeta::cli::run_euler}},
      {"variational", {"constrained dimension functional over a measure family", mfzeta::cli::run_variational}},
  };
  Options options;
  std::map<CLI::App*, std::string> names;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    add_options(sub, options, name == "zeta-abscissa");
    names[sub] = name;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string name = names.at(app.get_subcommands().front());
  try {
    const RunConfig config = effective_config(options);
    const auto exec = options.serial ? mfzeta::Execution::serial : mfzeta::Execution::parallel;
    const CommandOutput output = commands.at(name).second(config, exec);
    for (const auto& w : output.warnings) std::cerr << "warning: " << w << "\n";
    const std::string json = mfzeta::cli::envelope(name, config, output).dump(2) + "\n";
    if (!options.out.empty()) {
      const std::filesystem::path dir(options.out);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw mfzeta::ConfigError("cannot create " + dir.string() + ": " + ec.message());
      write_file(dir / (name + ".json"), json);
      if (!output.csv.empty()) write_file(dir / (name + ".csv"), output.csv);
    } else if (options.format == "csv") {
      if (output.csv.empty()) throw mfzeta::ConfigError(name + " has no CSV form");
      std::cout << output.csv;
    } else {
      std::cout << json;
    }
  } catch (const mfzeta::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mfzeta::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
