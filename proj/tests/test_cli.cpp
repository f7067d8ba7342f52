#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "commands.hpp"
#include "run_config.hpp"

using namespace mfzeta;
using namespace mfzeta::cli;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

const char* kBinomialIni = "[model]\nratios = 0.5, 0.5\nrows = 0.2, 0.8\n[statistic]\nkind = ratio\n";
const char* kUniformIni = "[model]\nratios = 0.5, 0.5\nrows = 0.5, 0.5\n[statistic]\nkind = ratio\n";

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mfzeta_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::filesystem::path write_ini(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args) {
  const std::string line = std::string(MFZETA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(line.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("parse_config reads every section") {
  const auto c = parse(
      "# comment\n[model]\nratios = 0.5, 0.25, 0.25\nrows = 0.2, 0.3, 0.5 ; 0.5, 0.25, 0.25\n"
      "[statistic]\nkind = ratio\n[target]\nspec = point:0.9;1.0\n"
      "[run]\nradii = 0.2, 0.1\nlevels = 10, 20\ns = 1.25\nseed = 7\nfamily = markov1\nmode = fixed\n");
  CHECK(c.ratios == std::vector<double>{0.5, 0.25, 0.25});
  REQUIRE(c.rows.size() == 2);
  CHECK(c.rows[1] == std::vector<double>{0.5, 0.25, 0.25});
  CHECK(c.target == std::optional<std::string>("point:0.9;1.0"));
  CHECK(c.radii == std::vector<double>{0.2, 0.1});
  CHECK(c.levels == std::vector<int>{10, 20});
  CHECK(c.s == 1.25);
  CHECK(c.seed == 7);
  CHECK(c.mode == "fixed");
  CHECK(make_family(c) == MeasureFamily::markov1);
  CHECK(make_model(c).dimension() == 2);
  CHECK_NOTHROW(validate(c));
}

TEST_CASE("parse_config rejects bad input") {
  CHECK_THROWS_AS(parse("[model]\nratios = 0.5, 0.5\ncolour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse("[extras]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_real_list("0.5, abc"), ConfigError);
  CHECK_THROWS_AS(parse_real_list("0.5,"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("1, 2.5"), ConfigError);
  CHECK_THROWS_AS(validate(parse("[model]\nratios = 0.5, 0.5\nrows = 0.3, 0.8\n")), ConfigError);
  CHECK_THROWS_AS(validate(parse("[model]\nratios = 0.5, 0.5\nrows = 0.2, 0.8\n[target]\nspec = cube:1\n")),
                  ConfigError);
  CHECK_THROWS_AS(validate(parse(std::string(kBinomialIni) + "[run]\nmode = sideways\n")), ConfigError);
  CHECK_THROWS_AS(validate(parse(std::string(kBinomialIni) + "[run]\nfamily = gibbs\n")), ConfigError);
}

TEST_CASE("config hash is canonical") {
  const auto a = parse(kBinomialIni);
  const auto b = parse("[statistic]\nkind   =   ratio\n[model]\nrows = 0.2,0.8\nratios = 0.5,0.5\n");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 64);
  CHECK(config_hash(a) != config_hash(parse(kUniformIni)));
  CHECK(to_json(ExtReal::neg_inf()) == "-inf");
  CHECK(to_json(ExtReal(0.5)) == 0.5);
}

TEST_CASE("spectrum command") {
  const auto out = run_spectrum(parse(kBinomialIni), Execution::parallel);
  const auto& samples = out.result["samples"];
  REQUIRE(samples.size() == 201);
  double best = -1.0;
  for (const auto& s : samples) best = std::max(best, s["f"].get<double>());
  CHECK(best == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::count(out.csv.begin(), out.csv.end(), '\n') == 202);

  const auto uni = run_spectrum(parse(kUniformIni), Execution::parallel);
  for (const auto& s : uni.result["samples"]) CHECK(s["alpha"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(uni.result["degenerate"] == true);
  CHECK_FALSE(uni.warnings.empty());

  const auto env = envelope("spectrum", parse(kBinomialIni), out);
  CHECK(env["schema_version"] == kSchemaVersion);
  CHECK(env["library_version"] == MFZETA_VERSION);
  CHECK(env["config_hash"] == config_hash(parse(kBinomialIni)));
}

TEST_CASE("zeta-abscissa command") {
  auto c = parse(kBinomialIni);
  c.target = "point:0.9";
  c.radii = {0.2, 0.1, 0.05};
  const auto shrink = run_zeta_abscissa(c, Execution::parallel);
  CHECK(shrink.result["rows"].size() == 3);
  for (const auto& row : shrink.result["rows"]) CHECK(row.contains("gap"));

  c.mode = "fixed";
  c.target = "box:0.3,2.4";
  const auto full = run_zeta_abscissa(c, Execution::parallel);
  CHECK(full.result["estimate"]["value"].get<double>() == doctest::Approx(1.0).epsilon(0.01));

  c.target = "point:0.9";
  const auto point = run_zeta_abscissa(c, Execution::parallel);
  CHECK_FALSE(point.warnings.empty());
  CHECK(point.result["estimate"]["value"] == "-inf");
  CHECK(point.result["interior_condition"] == false);
}

TEST_CASE("coarse, euler and variational commands") {
  auto uni = parse(kUniformIni);
  uni.target = "point:1.0";
  CHECK(run_coarse(uni, Execution::parallel).result["slope"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  auto bin = parse(kBinomialIni);
  bin.target = "box:0.5,1.5";
  const auto e = run_euler(bin, Execution::parallel);
  CHECK(e.result["s"] == 1.6);
  CHECK(e.result["discrepancy"].get<double>() < 1e-4);

  bin.alphas = {0.6, 1.0, 1.5, 2.0};
  const auto v = run_variational(bin, Execution::parallel);
  REQUIRE(v.result["rows"].size() == 4);
  for (const auto& row : v.result["rows"]) CHECK(std::abs(row["gap"].get<double>()) < 5e-3);
}

TEST_CASE("exit codes") {
  const auto good = write_ini("good.ini", std::string(kBinomialIni) + "[target]\nspec = box:0.5,1.0\n");
  const auto bad_rows = write_ini("bad_rows.ini", "[model]\nratios = 0.5, 0.5\nrows = 0.3, 0.8\n");
  const auto bad_key = write_ini("bad_key.ini", std::string(kBinomialIni) + "[run]\nspeed = 3\n");
  CHECK(run_cli("spectrum --model " + good.string()) == 0);
  CHECK(run_cli("spectrum --model " + bad_rows.string()) == 2);
  CHECK(run_cli("spectrum --model " + bad_key.string()) == 2);
  CHECK(run_cli("spectrum --model " + scratch("missing.ini").string()) == 2);
  CHECK(run_cli("coarse --model " + good.string() + " --radius -1") == 2);
  CHECK(run_cli("euler --model " + good.string() + " --format xml") == 2);
  CHECK(run_cli("nonsense") == 2);
  const auto twice = write_ini("twice.ini", std::string(kBinomialIni) + "[statistic]\nkind = ratio\n");
  CHECK(run_cli("spectrum --model " + twice.string()) == 2);
  // Enumerating 2^40 words exceeds the budget: a numeric failure.
  const auto window = write_ini(
      "window.ini",
      "[model]\nratios = 0.5, 0.5\nrows = 0.2, 0.8\n[statistic]\nkind = birkhoff\nwindow = 2\ntable = 0, 1, 1, 0\n"
      "[target]\nspec = box:0.2,0.5\n[run]\nlevels = 40\n");
  CHECK(run_cli("zeta-abscissa --model " + window.string()) == 3);
}

TEST_CASE("output files and determinism") {
  const auto ini = write_ini("det.ini", std::string(kBinomialIni) + "[target]\nspec = box:0.5,1.0\n");
  const auto d1 = scratch("out1"), d2 = scratch("out2");
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
  REQUIRE(run_cli("spectrum --model " + ini.string() + " --out " + d1.string()) == 0);
  REQUIRE(run_cli("spectrum --model " + ini.string() + " --out " + d2.string() + " --serial") == 0);
  CHECK(std::filesystem::exists(d1 / "spectrum.csv"));
  CHECK(slurp(d1 / "spectrum.json") == slurp(d2 / "spectrum.json"));
  CHECK(slurp(d1 / "spectrum.csv") == slurp(d2 / "spectrum.csv"));
  REQUIRE(run_cli("coarse --model " + ini.string() + " --out " + d1.string()) == 0);
  REQUIRE(run_cli("coarse --model " + ini.string() + " --out " + d2.string()) == 0);
  CHECK(slurp(d1 / "coarse.json") == slurp(d2 / "coarse.json"));
}
