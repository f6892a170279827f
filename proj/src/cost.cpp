#include "vaoi/cost.hpp"

#include <cmath>

#include "vaoi/analytic.hpp"
#include "vaoi/scaling.hpp"

namespace vaoi {

namespace {

void check_alpha_k(double alpha, double k) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("K must be positive");
}

}  // namespace

double cost_j(double alpha, double k, double lambda) {
  check_alpha_k(alpha, k);
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  return alpha * k / lambda + (1.0 - alpha) * lambda;
}

double optimal_lambda(double alpha, double k) {
  check_alpha_k(alpha, k);
  return std::sqrt(alpha * k / (1.0 - alpha));
}

double optimal_cost(double alpha, double k) {
  check_alpha_k(alpha, k);
  return 2.0 * std::sqrt(alpha * (1.0 - alpha) * k);
}

CostProfile cost_profile(double alpha, double k) {
  return {alpha, k, optimal_lambda(alpha, k), optimal_cost(alpha, k)};
}

CostTable cost_sweep(std::span<const double> alpha_list, std::span<const double> lambda_grid,
                     const MobilityScaling& scaling, TopologyKind topology, std::size_t n,
                     double lambda_e) {
  if (alpha_list.empty() || lambda_grid.empty()) throw DomainError("cost sweep grids must be nonempty");
  if (n < 2) throw DomainError("cost sweep requires n >= 2");

  CostTable table{scaling, topology, n, lambda_e, {}, {}};
  const double k = k_constant(scaling, n, lambda_e);

  // v1 depends on lambda but not alpha.
  std::vector<double> v1;
  v1.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    NetworkConfig cfg{n, lambda_e, lambda, topology, scaling, true};
    v1.push_back(v_symmetric(cfg).v1());
  }

  for (double alpha : alpha_list) {
    table.profiles.push_back(cost_profile(alpha, k));
    const std::size_t first = table.rows.size();
    std::size_t best = first;
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
      CostRow row;
      row.alpha = alpha;
      row.lambda = lambda_grid[i];
      row.cost_bound = cost_j(alpha, k, row.lambda);
      row.cost_exact = alpha * v1[i] + (1.0 - alpha) * row.lambda;
      table.rows.push_back(row);
      if (row.cost_bound < table.rows[best].cost_bound) best = table.rows.size() - 1;
    }
    table.rows[best].is_grid_argmin = true;
  }
  return table;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) throw DomainError("invalid log grid");
  if (count == 1) return {lo};
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.back() = hi;
  return grid;
}

}  // namespace vaoi
