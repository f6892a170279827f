#include "vaoi/core.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace vaoi {

void NetworkConfig::validate() const {
  if (n == 0) throw ConfigError("n must be at least 1");
  if (!(lambda_e > 0.0) || !std::isfinite(lambda_e))
    throw ConfigError("lambda_e must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ConfigError("lambda must be positive");
  if (scaling.kind != ScalingKind::Linear && !(scaling.c > 0.0))
    throw ConfigError("scaling constant c must be positive");
  if (scaling.kind == ScalingKind::LogScaled && n < 2)
    throw ConfigError("log-scaled mobility requires n >= 2");
}

RateSet RateSet::empty(std::size_t n, double lambda_e) {
  RateSet r;
  r.n = n;
  r.lambda_e = lambda_e;
  r.source_to_node.assign(n, 0.0);
  r.gossip.assign(n, std::vector<double>(n, 0.0));
  r.mobility.assign(n + 1, std::vector<double>(n + 1, 0.0));
  return r;
}

void RateSet::validate() const {
  if (n == 0) throw ConfigError("rate set has no nodes");
  if (!(lambda_e >= 0.0)) throw ConfigError("lambda_e must be nonnegative");
  if (source_to_node.size() != n || gossip.size() != n || mobility.size() != n + 1)
    throw ConfigError("rate set dimensions do not match n");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(source_to_node[i] >= 0.0)) throw ConfigError("negative source rate");
    if (gossip[i].size() != n) throw ConfigError("gossip matrix is not square");
    for (std::size_t j = 0; j < n; ++j)
      if (!(gossip[i][j] >= 0.0)) throw ConfigError("negative gossip rate");
    if (gossip[i][i] != 0.0) throw ConfigError("gossip diagonal must be zero");
  }
  for (std::size_t i = 0; i <= n; ++i) {
    if (mobility[i].size() != n + 1) throw ConfigError("mobility matrix is not square");
    if (mobility[i][i] != 0.0) throw ConfigError("mobility diagonal must be zero");
    for (std::size_t j = 0; j <= n; ++j) {
      if (!(mobility[i][j] >= 0.0)) throw ConfigError("negative mobility rate");
      if (mobility[i][j] != mobility[j][i]) throw ConfigError("mobility matrix must be symmetric");
    }
  }
}

bool RateSet::has_full_mobility() const {
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (!(mobility[i][j] > 0.0)) return false;
  return true;
}

double RateSet::total_rate() const {
  double total = lambda_e;
  for (double r : source_to_node) total += r;
  for (const auto& row : gossip)
    for (double r : row) total += r;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) total += mobility[i][j];
  return total;
}

double f_eval(const MobilityScaling& scaling, std::size_t n) {
  if (n == 0) throw DomainError("f(n) requires n >= 1");
  switch (scaling.kind) {
    case ScalingKind::Linear:
      return static_cast<double>(n);
    case ScalingKind::LogScaled:
      if (n < 2) throw DomainError("c ln n vanishes for n < 2");
      return scaling.c * std::log(static_cast<double>(n));
    case ScalingKind::Constant:
      return scaling.c;
  }
  throw DomainError("unknown scaling kind");
}

RateSet build_rates(const NetworkConfig& config) {
  config.validate();
  const std::size_t n = config.n;
  const double nd = static_cast<double>(n);
  RateSet r = RateSet::empty(n, config.lambda_e);

  for (auto& rate : r.source_to_node) rate = config.lambda / nd;

  // n = 1 has no node pairs, so FC and DC coincide.
  if (config.topology == TopologyKind::FullyConnected && n > 1) {
    const double g = config.lambda / (nd - 1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) r.gossip[i][j] = g;
  }

  if (config.mobility_enabled) {
    const double m = config.lambda / f_eval(config.scaling, n);
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j)
        if (i != j) r.mobility[i][j] = m;
  }
  return r;
}

std::string_view to_string(ScalingKind kind) {
  switch (kind) {
    case ScalingKind::Linear: return "linear";
    case ScalingKind::LogScaled: return "log";
    case ScalingKind::Constant: return "const";
  }
  return "?";
}

std::string_view to_string(TopologyKind kind) {
  return kind == TopologyKind::Disconnected ? "dc" : "fc";
}

ScalingKind parse_scaling(std::string_view name) {
  if (name == "linear") return ScalingKind::Linear;
  if (name == "log") return ScalingKind::LogScaled;
  if (name == "const") return ScalingKind::Constant;
  throw ConfigError("unknown scaling '" + std::string(name) + "' (expected linear|log|const)");
}

TopologyKind parse_topology(std::string_view name) {
  if (name == "dc") return TopologyKind::Disconnected;
  if (name == "fc") return TopologyKind::FullyConnected;
  throw ConfigError("unknown topology '" + std::string(name) + "' (expected dc|fc)");
}

namespace {

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         std::string_view where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key))
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
}

}  // namespace

NetworkConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(doc, {"n", "lambda_e", "lambda", "topology", "scaling", "mobility"}, "config");

  NetworkConfig cfg;
  try {
    if (doc.contains("n")) {
      const auto& n = doc.at("n");
      if (!n.is_number_integer() || n.get<long long>() < 1)
        throw ConfigError("n must be a positive integer");
      cfg.n = n.get<std::size_t>();
    }
    if (doc.contains("lambda_e")) cfg.lambda_e = doc.at("lambda_e").get<double>();
    if (doc.contains("lambda")) cfg.lambda = doc.at("lambda").get<double>();
    if (doc.contains("topology")) cfg.topology = parse_topology(doc.at("topology").get<std::string>());
    if (doc.contains("scaling")) {
      const auto& s = doc.at("scaling");
      if (!s.is_object()) throw ConfigError("scaling must be an object");
      reject_unknown_keys(s, {"kind", "c"}, "scaling");
      if (s.contains("kind")) cfg.scaling.kind = parse_scaling(s.at("kind").get<std::string>());
      if (s.contains("c")) cfg.scaling.c = s.at("c").get<double>();
    }
    if (doc.contains("mobility")) cfg.mobility_enabled = doc.at("mobility").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

NetworkConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(doc);
}

nlohmann::json config_to_json(const NetworkConfig& config) {
  return {{"n", config.n},
          {"lambda_e", config.lambda_e},
          {"lambda", config.lambda},
          {"topology", std::string(to_string(config.topology))},
          {"scaling", {{"kind", std::string(to_string(config.scaling.kind))}, {"c", config.scaling.c}}},
          {"mobility", config.mobility_enabled}};
}

}  // namespace vaoi
