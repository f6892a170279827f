#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vaoi/analytic.hpp"

using namespace vaoi;

namespace {

NetworkConfig sym(std::size_t n, TopologyKind t, MobilityScaling s, double le = 1.0, double l = 1.0) {
  return {n, le, l, t, s, true};
}

RateSet random_full_mobility_rates(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::bernoulli_distribution link(0.5);
  auto r = RateSet::empty(n, u(gen));
  for (std::size_t j = 0; j < n; ++j) r.source_to_node[j] = link(gen) ? u(gen) : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && link(gen)) r.gossip[i][j] = u(gen);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) r.mobility[i][j] = r.mobility[j][i] = u(gen);
  return r;
}

}  // namespace

TEST_CASE("subset DP: single-node anchors") {
  auto r = RateSet::empty(1, 1.0);
  r.source_to_node[0] = 1.0;
  CHECK(solve_subset_dp(r).at(0b1) == doctest::Approx(1.0).epsilon(1e-15));
  r.mobility[0][1] = r.mobility[1][0] = 1.0;
  CHECK(solve_subset_dp(r).at(0b1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("subset DP: DC linear n=2 matches hand values and the CTMC oracle") {
  const auto rates = build_rates(sym(2, TopologyKind::Disconnected, MobilityScaling::linear()));
  const auto table = solve_subset_dp(rates);
  CHECK(table.at(0b01) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(table.at(0b10) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(table.at(0b11) == doctest::Approx(0.5).epsilon(1e-14));

  const auto brute = oracle::ctmc_subset_ages(rates, 60);
  CHECK(brute[0b01] == doctest::Approx(5.0 / 6.0).epsilon(1e-9));
  CHECK(brute[0b11] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("subset DP agrees with the brute-force CTMC on random asymmetric rate sets") {
  std::mt19937_64 gen(20240611);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = trial < 2 ? 2 : 3;
    auto rates = random_full_mobility_rates(n, gen);
    // Keep the truncated tail negligible.
    rates.lambda_e = 0.5;
    const auto table = solve_subset_dp(rates);
    const auto brute = oracle::ctmc_subset_ages(rates, n == 2 ? 60 : 32);
    for (Subset s = 1; s <= table.full_set(); ++s) {
      INFO("trial " << trial << " mask " << s);
      CHECK(table.at(s) == doctest::Approx(brute[s]).epsilon(1e-8));
    }
  }
}

TEST_CASE("subset DP errors") {
  SUBCASE("cap exceeded") {
    const auto rates = build_rates(sym(21, TopologyKind::Disconnected, MobilityScaling::linear()));
    CHECK_THROWS_AS(solve_subset_dp(rates), SubsetCapExceeded);
    CHECK_THROWS_AS(solve_subset_dp(build_rates(sym(6, TopologyKind::Disconnected, MobilityScaling::linear())), 5),
                    SubsetCapExceeded);
  }
  SUBCASE("unreachable node") {
    auto r = RateSet::empty(2, 1.0);
    r.source_to_node[0] = 1.0;
    CHECK_THROWS_AS(solve_subset_dp(r), ZeroDenominator);
  }
  SUBCASE("node reachable only by gossip is fine") {
    auto r = RateSet::empty(2, 1.0);
    r.source_to_node[0] = 1.0;
    r.gossip[0][1] = 1.0;
    const auto t = solve_subset_dp(r);
    CHECK(t.at(0b01) == doctest::Approx(1.0));
    CHECK(t.at(0b10) == doctest::Approx(2.0));  // line network: one extra hop
  }
}

TEST_CASE("v_symmetric: hand-evaluated recursion values") {
  const auto p2 = v_symmetric(sym(2, TopologyKind::Disconnected, MobilityScaling::linear()));
  CHECK(p2.of_size(1) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(p2.of_size(2) == doctest::Approx(0.5).epsilon(1e-15));

  const auto p4 = v_symmetric(sym(4, TopologyKind::Disconnected, MobilityScaling::linear()));
  CHECK(p4.v1() == doctest::Approx(77.0 / 60.0).epsilon(1e-14));
}

TEST_CASE("v_symmetric agrees with the exact rational recursion") {
  for (int n = 1; n <= 14; ++n) {
    const auto exact = oracle::dc_linear_exact(n);
    const auto p = v_symmetric(sym(static_cast<std::size_t>(n), TopologyKind::Disconnected, MobilityScaling::linear()));
    for (int j = 1; j <= n; ++j) CHECK(p.of_size(j) == doctest::Approx(exact[j - 1].to_double()).epsilon(1e-13));
  }
  CHECK(oracle::dc_linear_exact(2)[0] == oracle::Fraction(5, 6));
  CHECK(oracle::dc_linear_exact(4)[0] == oracle::Fraction(77, 60));
}

TEST_CASE("v_symmetric: FC with one node collapses to the terminal value") {
  const auto p = v_symmetric(sym(1, TopologyKind::FullyConnected, MobilityScaling::linear(), 3.0, 2.0));
  REQUIRE(p.n() == 1);
  CHECK(p.v1() == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
  const auto pc = v_symmetric(sym(1, TopologyKind::FullyConnected, MobilityScaling::constant(1.0), 3.0, 2.0));
  CHECK(pc.v1() == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
  const auto pc5 = v_symmetric(sym(1, TopologyKind::FullyConnected, MobilityScaling::constant(5.0)));
  CHECK(pc5.v1() == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("v_symmetric requires contact mobility") {
  auto cfg = sym(3, TopologyKind::Disconnected, MobilityScaling::linear());
  cfg.mobility_enabled = false;
  CHECK_THROWS_AS(v_symmetric(cfg), ConfigError);
}

TEST_CASE("closed form for DC linear") {
  CHECK(v_closed_form_dc_linear(2, 1, 1) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(v_closed_form_dc_linear(4, 1, 1) == doctest::Approx(77.0 / 60.0).epsilon(1e-15));
  CHECK(v_closed_form_dc_linear(2, 2, 1) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(v_closed_form_dc_linear(1, 1, 1), DomainError);
  for (std::size_t n = 2; n <= 100; ++n) {
    const double rec = v_symmetric(sym(n, TopologyKind::Disconnected, MobilityScaling::linear(), 1.3, 0.7)).v1();
    CHECK(std::abs(v_closed_form_dc_linear(n, 1.3, 0.7) - rec) <= 1e-12 * rec);
  }
}

TEST_CASE("terminal values") {
  CHECK(v_n_terminal(sym(7, TopologyKind::Disconnected, MobilityScaling::linear())) == 0.5);
  CHECK(v_n_terminal(sym(5, TopologyKind::Disconnected, MobilityScaling::constant(5.0))) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(v_n_terminal(sym(2, TopologyKind::FullyConnected, MobilityScaling::log_scaled(5.0))) ==
        doctest::Approx(5.0 * std::log(2.0) / (2.0 + 5.0 * std::log(2.0))).epsilon(1e-15));
  CHECK(v_n_terminal(sym(2, TopologyKind::FullyConnected, MobilityScaling::log_scaled(5.0))) ==
        doctest::Approx(0.634).epsilon(1e-3));
}

TEST_CASE("exchange-mobility closed form") {
  CHECK(v_exchange_dc(10, 1, 1) == 10.0);
  CHECK(v_exchange_dc(1, 1, 1) == 1.0);
  CHECK(v_exchange_dc(4, 2, 0.5) == 16.0);
  CHECK_THROWS_AS(v_exchange_dc(0, 1, 1), DomainError);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0) == 0.0);
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("subset DP collapses to the cardinality recursion under symmetry") {
  for (auto topo : {TopologyKind::Disconnected, TopologyKind::FullyConnected})
    for (auto s : {MobilityScaling::linear(), MobilityScaling::log_scaled(5.0), MobilityScaling::constant(5.0)})
      for (std::size_t n : {2u, 5u, 8u}) {
        const auto cfg = sym(n, topo, s, 2.0, 1.0);
        const auto table = solve_subset_dp(build_rates(cfg));
        const auto p = v_symmetric(cfg);
        for (Subset m = 1; m <= table.full_set(); ++m) {
          const double expected = p.of_size(static_cast<std::size_t>(std::popcount(m)));
          CHECK(std::abs(table.at(m) - expected) <= 1e-10 * expected);
        }
      }
}

TEST_CASE("properties on random rate sets") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto rates = random_full_mobility_rates(n, gen);
    const auto table = solve_subset_dp(rates);

    // Superset monotonicity.
    for (Subset s = 1; s <= table.full_set(); ++s) {
      CHECK(table.at(s) >= 0.0);
      for (std::size_t i = 0; i < n; ++i)
        if (!(s >> i & 1u)) CHECK(table.at(s | (Subset{1} << i)) <= table.at(s) * (1 + 1e-14));
    }

    // Exactly linear in lambda_e.
    auto doubled = rates;
    doubled.lambda_e *= 2.0;
    const auto t2 = solve_subset_dp(doubled);
    for (Subset s = 1; s <= table.full_set(); ++s)
      CHECK(t2.at(s) == doctest::Approx(2.0 * table.at(s)).epsilon(1e-13));

    // Contacts among nodes act as extra gossip links; contacts with the
    // source act as extra source pushes.
    auto folded = RateSet::empty(n, rates.lambda_e);
    for (std::size_t j = 0; j < n; ++j) folded.source_to_node[j] = rates.source_to_node[j] + rates.mobility[0][j + 1];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) folded.gossip[i][j] = rates.gossip[i][j] + rates.mobility[i + 1][j + 1];
    const auto tf = solve_subset_dp(folded);
    for (Subset s = 1; s <= table.full_set(); ++s)
      CHECK(tf.at(s) == doctest::Approx(table.at(s)).epsilon(1e-12));
  }
}

TEST_CASE("FC never ages more than DC (analytic coupling order)") {
  for (auto s : {MobilityScaling::linear(), MobilityScaling::log_scaled(1.0), MobilityScaling::log_scaled(5.0),
                 MobilityScaling::constant(1.0), MobilityScaling::constant(5.0)})
    for (std::size_t n : {2u, 3u, 10u, 100u, 1000u})
      for (double ratio : {0.5, 1.0, 2.0, 5.0}) {
        const double dc = v_symmetric(sym(n, TopologyKind::Disconnected, s, ratio)).v1();
        const double fc = v_symmetric(sym(n, TopologyKind::FullyConnected, s, ratio)).v1();
        CHECK(fc <= dc);
      }
}

TEST_CASE("SymmetricAgeProfile is non-increasing in subset size") {
  for (auto topo : {TopologyKind::Disconnected, TopologyKind::FullyConnected})
    for (auto s : {MobilityScaling::linear(), MobilityScaling::log_scaled(5.0), MobilityScaling::constant(5.0)}) {
      const auto p = v_symmetric(sym(50, topo, s));
      for (std::size_t j = 1; j < 50; ++j) CHECK(p.of_size(j + 1) <= p.of_size(j));
      CHECK(p.of_size(50) == doctest::Approx(v_n_terminal(sym(50, topo, s))).epsilon(1e-14));
    }
}
