#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace vaoi {

/// Raised when a configuration or rate set violates its invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a formula is evaluated outside the range of n it is defined for.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class ScalingKind { Linear, LogScaled, Constant };
enum class TopologyKind { Disconnected, FullyConnected };

/// How the pairwise contact rate lambda / f(n) decays with network size:
/// f(n) = n, c ln n or c.
struct MobilityScaling {
  ScalingKind kind = ScalingKind::Linear;
  double c = 1.0;

  static MobilityScaling linear() { return {ScalingKind::Linear, 1.0}; }
  static MobilityScaling log_scaled(double c) { return {ScalingKind::LogScaled, c}; }
  static MobilityScaling constant(double c) { return {ScalingKind::Constant, c}; }
};

struct NetworkConfig {
  std::size_t n = 1;
  double lambda_e = 1.0;
  double lambda = 1.0;
  TopologyKind topology = TopologyKind::Disconnected;
  MobilityScaling scaling;
  bool mobility_enabled = true;

  /// Throws ConfigError when an invariant does not hold.
  void validate() const;
};

/// Fully expanded per-pair rates. Node indices in `source_to_node` and
/// `gossip` are 0-based over the n nodes; `mobility` is (n+1)x(n+1) with
/// index 0 the source and index k the k-th node.
struct RateSet {
  std::size_t n = 0;
  double lambda_e = 0.0;
  std::vector<double> source_to_node;
  std::vector<std::vector<double>> gossip;    // gossip[i][j]: i sends to j
  std::vector<std::vector<double>> mobility;  // symmetric, zero diagonal

  /// Zero-rate set for n nodes.
  static RateSet empty(std::size_t n, double lambda_e);

  /// Shape, sign, diagonal and mobility-symmetry checks.
  void validate() const;

  /// True when every unordered pair over {0} u nodes has a positive contact rate.
  bool has_full_mobility() const;

  /// Sum of all event rates (self-update, pushes, gossip, unordered contacts).
  double total_rate() const;
};

/// f(n) for the given scaling. Natural log for LogScaled.
double f_eval(const MobilityScaling& scaling, std::size_t n);

/// Symmetric-setting rates: lambda/n source pushes, lambda/(n-1) gossip on
/// FC, lambda/f(n) contact rate for every unordered pair including the source.
RateSet build_rates(const NetworkConfig& config);

std::string_view to_string(ScalingKind kind);
std::string_view to_string(TopologyKind kind);
ScalingKind parse_scaling(std::string_view name);
TopologyKind parse_topology(std::string_view name);

/// Loads a config document with keys n, lambda_e, lambda, topology,
/// scaling {kind, c} and mobility. Unknown keys are rejected.
NetworkConfig config_from_json(const nlohmann::json& doc);
NetworkConfig load_config(const std::string& path);
nlohmann::json config_to_json(const NetworkConfig& config);

}  // namespace vaoi
