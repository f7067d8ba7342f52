#include "run_config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/evp.h>

namespace mfzeta::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError("not a finite number: '" + text + "'");
  return v;
}

template <class Int>
Int parse_integer(const std::string& text) {
  Int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) throw ConfigError("not an integer: '" + text + "'");
  return v;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"ratios", "rows"}},
      {"statistic", {"kind", "window", "table"}},
      {"target", {"spec"}},
      {"run",
       {"radii", "levels", "deltas", "q_min", "q_max", "q_step", "s", "max_len", "alphas", "seed", "family",
        "restarts", "mode"}},
  };
  return keys;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_integer<int>(item));
  return out;
}

RunConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError("config: unknown section [" + section + "]");
    for (const auto& [key, node] : body) {
      if (!it->second.contains(key)) throw ConfigError("config: unknown key '" + key + "' in [" + section + "]");
      const std::string value = trim(node.data());
      const std::string where = "config [" + section + "] " + key + ": ";
      try {
        if (section == "model" && key == "ratios") c.ratios = parse_real_list(value);
        if (section == "model" && key == "rows")
          for (const auto& row : split(value, ';')) c.rows.push_back(parse_real_list(row));
        if (section == "statistic" && key == "kind") c.statistic = value;
        if (section == "statistic" && key == "window") c.window = parse_integer<int>(value);
        if (section == "statistic" && key == "table") c.table = parse_real_list(value);
        if (section == "target") c.target = value;
        if (section == "run") {
          if (key == "radii") c.radii = parse_real_list(value);
          if (key == "levels") c.levels = parse_int_list(value);
          if (key == "deltas") c.deltas = parse_real_list(value);
          if (key == "q_min") c.q_min = parse_real(value);
          if (key == "q_max") c.q_max = parse_real(value);
          if (key == "q_step") c.q_step = parse_real(value);
          if (key == "s") c.s = parse_real(value);
          if (key == "max_len") c.max_len = parse_integer<int>(value);
          if (key == "alphas") c.alphas = parse_real_list(value);
          if (key == "seed") c.seed = parse_integer<std::uint64_t>(value);
          if (key == "family") c.family = value;
          if (key == "restarts") c.restarts = parse_integer<int>(value);
          if (key == "mode") c.mode = value;
        }
      } catch (const ConfigError& e) {
        throw ConfigError(where + e.what());
      }
    }
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

IfsModel make_model(const RunConfig& config) {
  if (config.ratios.empty()) throw ConfigError("config: [model] ratios is required");
  if (config.rows.empty()) throw ConfigError("config: [model] rows is required");
  return IfsModel(config.ratios, config.rows);
}

SimilarityWeights make_weights(const RunConfig& config) {
  if (config.ratios.empty()) throw ConfigError("config: [model] ratios is required");
  return SimilarityWeights(config.ratios);
}

WordStatistic make_statistic(const RunConfig& config) {
  if (config.statistic == "ratio") return WordStatistic::ratio(make_model(config));
  if (config.statistic == "birkhoff") {
    make_weights(config);
    return WordStatistic::birkhoff(
        KGramTable(static_cast<int>(config.ratios.size()), config.window, config.table));
  }
  throw ConfigError("config: [statistic] kind must be ratio or birkhoff");
}

Target make_target(const RunConfig& config) {
  if (!config.target) throw ConfigError("a target is required (--target or [target] spec)");
  return Target::parse(*config.target);
}

MeasureFamily make_family(const RunConfig& config) {
  if (config.family == "bernoulli") return MeasureFamily::bernoulli;
  if (config.family == "markov1") return MeasureFamily::markov1;
  throw ConfigError("config: [run] family must be bernoulli or markov1");
}

void validate(const RunConfig& config) {
  if (config.statistic != "ratio" && config.statistic != "birkhoff")
    throw ConfigError("config: [statistic] kind must be ratio or birkhoff");
  if (!config.ratios.empty()) make_weights(config);
  if (!config.rows.empty()) make_model(config);
  std::optional<int> dimension;
  if (!config.ratios.empty() && (config.statistic == "birkhoff" || !config.rows.empty()))
    dimension = make_statistic(config).dimension();
  if (config.target) {
    const Target target = Target::parse(*config.target);
    if (dimension && target.dimension() != *dimension)
      throw ConfigError("target dimension does not match the statistic");
  }
  for (double r : config.radii)
    if (!(r >= 0.0)) throw ConfigError("radii must be >= 0");
  for (int n : config.levels)
    if (n < 1) throw ConfigError("levels must be >= 1");
  for (double d : config.deltas)
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("deltas must lie in (0, 1)");
  if (!(config.q_step > 0.0) || !(config.q_max >= config.q_min)) throw ConfigError("need q_step > 0 and q_max >= q_min");
  if (config.max_len < 1) throw ConfigError("max_len must be >= 1");
  if (config.restarts < 0) throw ConfigError("restarts must be >= 0");
  make_family(config);
  if (config.mode != "shrink" && config.mode != "fixed") throw ConfigError("mode must be shrink or fixed");
}

nlohmann::json canonical(const RunConfig& c) {
  nlohmann::json j;
  j["model"] = {{"ratios", c.ratios}, {"rows", c.rows}};
  j["statistic"] = {{"kind", c.statistic}, {"window", c.window}, {"table", c.table}};
  j["target"] = c.target ? Target::parse(*c.target).to_string() : std::string();
  j["run"] = {{"radii", c.radii},   {"levels", c.levels}, {"deltas", c.deltas},     {"q_min", c.q_min},
              {"q_max", c.q_max},   {"q_step", c.q_step}, {"s", c.s},               {"max_len", c.max_len},
              {"alphas", c.alphas}, {"seed", c.seed},     {"family", c.family},     {"restarts", c.restarts},
              {"mode", c.mode}};
  return j;
}

std::string config_hash(const RunConfig& config) { return sha256_hex(canonical(config).dump()); }

}  // namespace mfzeta::cli
