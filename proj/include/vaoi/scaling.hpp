#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vaoi/core.hpp"

namespace vaoi {

struct ScalingSample {
  std::size_t n = 0;
  double v1_exact = 0.0;
  double upper_bound = 0.0;
  double ratio = 0.0;  // v1_exact / g(n), g the order envelope for the scaling
};

struct ScalingReport {
  MobilityScaling scaling;
  TopologyKind topology = TopologyKind::Disconnected;
  std::vector<ScalingSample> samples;
  double max_ratio = 0.0;
  bool ratio_non_increasing = true;

  bool bounds_hold() const;
};

/// K in v1(lambda) <= K / lambda for the DC network.
double k_constant(const MobilityScaling& scaling, std::size_t n, double lambda_e);

/// Closed-form upper bound on v1. DC bounds equal K / lambda; FC bounds are
/// the final inequality of each FC derivation (built on lambda_eff).
double upper_bound_v1(const MobilityScaling& scaling, TopologyKind topology, std::size_t n,
                      double lambda_e, double lambda);

/// Order envelope: ln n, (ln n)^2 / n or ln n / n.
double order_envelope(ScalingKind kind, std::size_t n);

ScalingReport scaling_sweep(const MobilityScaling& scaling, TopologyKind topology,
                            std::span<const std::size_t> n_list, double lambda_e, double lambda);

/// {2, 4, 8, ..., 2048}
std::vector<std::size_t> default_n_grid();

}  // namespace vaoi
