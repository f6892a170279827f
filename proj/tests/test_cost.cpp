#include <doctest.h>

#include <cmath>
#include <random>

#include "vaoi/cost.hpp"
#include "vaoi/scaling.hpp"

using namespace vaoi;

TEST_CASE("cost_j") {
  CHECK(cost_j(0.5, 1, 1) == 1.0);
  CHECK(cost_j(0.5, 4, 2) == 2.0);
  CHECK(cost_j(0.8, 1, 2) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(cost_j(0.0, 1, 1), DomainError);
  CHECK_THROWS_AS(cost_j(1.0, 1, 1), DomainError);
  CHECK_THROWS_AS(cost_j(0.5, 0, 1), DomainError);
  CHECK_THROWS_AS(cost_j(0.5, 1, 0), DomainError);
}

TEST_CASE("closed-form optimum") {
  CHECK(optimal_lambda(0.5, 1) == 1.0);
  CHECK(optimal_cost(0.5, 1) == 1.0);
  CHECK(optimal_lambda(0.8, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(optimal_cost(0.8, 1) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(optimal_lambda(0.5, 4) == 2.0);
  CHECK(optimal_cost(0.5, 4) == 2.0);
  const auto p = cost_profile(0.8, 1);
  CHECK(cost_j(p.alpha, p.k, p.lambda_star) == doctest::Approx(p.j_star).epsilon(1e-15));
}

TEST_CASE("optimum beats random points") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> a(0.01, 0.99), k(1e-3, 1e2), l(1e-4, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = a(gen), kk = k(gen), lambda = l(gen);
    const double js = cost_j(alpha, kk, optimal_lambda(alpha, kk));
    CHECK(js <= cost_j(alpha, kk, lambda) * (1 + 1e-15));
    CHECK(js == doctest::Approx(optimal_cost(alpha, kk)).epsilon(1e-12));
  }
}

TEST_CASE("lambda* strictly increases with alpha") {
  for (double k : {0.01, 1.0, 50.0}) {
    double prev = 0.0;
    for (int i = 1; i <= 9; ++i) {
      const double ls = optimal_lambda(0.1 * i, k);
      CHECK(ls > prev);
      prev = ls;
    }
  }
}

TEST_CASE("cost sweep") {
  const std::vector<double> alphas = {0.5};
  const std::vector<double> grid = {0.5, 1.0, 2.0};
  const auto t = cost_sweep(alphas, grid, MobilityScaling::linear(), TopologyKind::Disconnected, 2, 1.0);
  REQUIRE(t.rows.size() == 3);
  CHECK(t.rows[1].cost_bound == doctest::Approx(0.5 * (std::log(2.0) + 1.0) + 0.5).epsilon(1e-15));
  CHECK(t.rows[1].cost_bound == doctest::Approx(1.3466).epsilon(1e-4));
  CHECK(t.rows[1].cost_exact == doctest::Approx(0.5 * 5.0 / 6.0 + 0.5).epsilon(1e-15));
  for (const auto& row : t.rows) CHECK(row.cost_exact <= row.cost_bound);

  CHECK_THROWS_AS(cost_sweep({}, grid, MobilityScaling::linear(), TopologyKind::Disconnected, 2, 1.0), DomainError);
  CHECK_THROWS_AS(cost_sweep(alphas, grid, MobilityScaling::linear(), TopologyKind::Disconnected, 1, 1.0),
                  DomainError);
}

TEST_CASE("grid argmin lands next to lambda*, and the bound cost is discretely convex") {
  const auto grid = log_grid(1e-3, 10.0, 81);
  const std::vector<double> alphas = {0.1, 0.25, 0.5, 0.75, 0.9};
  for (auto topo : {TopologyKind::Disconnected, TopologyKind::FullyConnected})
    for (auto s : {MobilityScaling::linear(), MobilityScaling::log_scaled(1.0), MobilityScaling::constant(1.0)}) {
      const auto t = cost_sweep(alphas, grid, s, topo, 1000, 1.0);
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        const auto* rows = &t.rows[a * grid.size()];
        std::size_t flagged = 0, argmin = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
          CHECK(rows[i].cost_exact <= rows[i].cost_bound);
          if (rows[i].is_grid_argmin) {
            ++flagged;
            argmin = i;
          }
        }
        CHECK(flagged == 1);
        const double ls = t.profiles[a].lambda_star;
        // Within one grid step on either side.
        const double lo = argmin > 0 ? grid[argmin - 1] : grid[0];
        const double hi = argmin + 1 < grid.size() ? grid[argmin + 1] : grid.back();
        CHECK(ls >= lo);
        CHECK(ls <= hi);
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
          // Convexity on a log grid: the middle point lies below the chord.
          const double w = (grid[i] - grid[i - 1]) / (grid[i + 1] - grid[i - 1]);
          const double chord = (1 - w) * rows[i - 1].cost_bound + w * rows[i + 1].cost_bound;
          CHECK(rows[i].cost_bound <= chord * (1 + 1e-12));
        }
      }
    }
}

TEST_CASE("K ordering across mobility scalings for n >= 3 (c = 1)") {
  for (std::size_t n = 3; n <= 4096; n = n < 20 ? n + 1 : n * 2)
    for (double le : {0.5, 1.0, 2.0}) {
      const double k_lin = k_constant(MobilityScaling::linear(), n, le);
      const double k_log = k_constant(MobilityScaling::log_scaled(1.0), n, le);
      const double k_const = k_constant(MobilityScaling::constant(1.0), n, le);
      CHECK(k_const <= k_log);
      CHECK(k_log <= k_lin);
      for (double alpha : {0.1, 0.5, 0.9}) {
        CHECK(optimal_cost(alpha, k_const) <= optimal_cost(alpha, k_log));
        CHECK(optimal_cost(alpha, k_log) <= optimal_cost(alpha, k_lin));
      }
    }
}

TEST_CASE("log_grid") {
  const auto g = log_grid(0.1, 10.0, 3);
  CHECK(g[0] == 0.1);
  CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g[2] == 10.0);
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 3), DomainError);
}

TEST_CASE("midpoint convexity on a uniform grid") {
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(0.1 * i);
  const std::vector<double> alphas = {0.2, 0.5, 0.8};
  const auto t = cost_sweep(alphas, grid, MobilityScaling::constant(1.0), TopologyKind::Disconnected, 50, 1.0);
  for (std::size_t a = 0; a < alphas.size(); ++a)
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      const auto& r = t.rows;
      const std::size_t k = a * grid.size() + i;
      CHECK(r[k].cost_bound <= 0.5 * (r[k - 1].cost_bound + r[k + 1].cost_bound) * (1 + 1e-12));
    }
}
