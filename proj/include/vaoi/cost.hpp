#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vaoi/core.hpp"

namespace vaoi {

/// Optimum of alpha K / lambda + (1 - alpha) lambda for one scenario.
struct CostProfile {
  double alpha = 0.0;
  double k = 0.0;
  double lambda_star = 0.0;
  double j_star = 0.0;
};

double cost_j(double alpha, double k, double lambda);
double optimal_lambda(double alpha, double k);
double optimal_cost(double alpha, double k);
CostProfile cost_profile(double alpha, double k);

struct CostRow {
  double alpha = 0.0;
  double lambda = 0.0;
  double cost_bound = 0.0;  // alpha K / lambda + (1 - alpha) lambda
  double cost_exact = 0.0;  // alpha v1(lambda) + (1 - alpha) lambda
  bool is_grid_argmin = false;  // of cost_bound within this alpha
};

struct CostTable {
  MobilityScaling scaling;
  TopologyKind topology = TopologyKind::Disconnected;
  std::size_t n = 0;
  double lambda_e = 0.0;
  std::vector<CostRow> rows;             // alpha-major, lambda_grid order
  std::vector<CostProfile> profiles;     // one per alpha
};

/// Bound-based and exact cost over alpha_list x lambda_grid. K comes from
/// the DC bound regardless of topology, which also bounds FC.
CostTable cost_sweep(std::span<const double> alpha_list, std::span<const double> lambda_grid,
                     const MobilityScaling& scaling, TopologyKind topology, std::size_t n,
                     double lambda_e);

/// `count` log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace vaoi
