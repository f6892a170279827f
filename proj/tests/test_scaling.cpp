#include <doctest.h>

#include <cmath>

#include "vaoi/analytic.hpp"
#include "vaoi/scaling.hpp"

using namespace vaoi;

TEST_CASE("K constants") {
  CHECK(k_constant(MobilityScaling::linear(), 2, 1.0) == doctest::Approx(std::log(2.0) + 1.0).epsilon(1e-15));
  CHECK(k_constant(MobilityScaling::linear(), 2, 1.0) == doctest::Approx(1.6931).epsilon(1e-4));
  CHECK(k_constant(MobilityScaling::constant(1.0), 2, 1.0) ==
        doctest::Approx((std::log(2.0) + 1.0) / 2.0 + 1.0 / 6.0).epsilon(1e-15));
  CHECK(k_constant(MobilityScaling::constant(1.0), 2, 1.0) == doctest::Approx(1.0132).epsilon(1e-4));
  CHECK(k_constant(MobilityScaling::linear(), 2, 0.0) == 0.0);
  CHECK_THROWS_AS(k_constant(MobilityScaling::linear(), 1, 1.0), DomainError);

  const double ln8 = std::log(8.0);
  CHECK(k_constant(MobilityScaling::log_scaled(5.0), 8, 2.0) ==
        doctest::Approx(10.0 * ln8 * ln8 / 8.0 + 10.0 * ln8 / 8.0 + 10.0 * ln8 / (8.0 * (8.0 + 5.0 * ln8))).epsilon(1e-15));
}

TEST_CASE("upper bounds: spot values") {
  CHECK(upper_bound_v1(MobilityScaling::linear(), TopologyKind::Disconnected, 2, 1, 1) ==
        doctest::Approx(1.6931).epsilon(1e-4));
  CHECK(5.0 / 6.0 <= upper_bound_v1(MobilityScaling::linear(), TopologyKind::Disconnected, 2, 1, 1));
  CHECK(upper_bound_v1(MobilityScaling::constant(5.0), TopologyKind::Disconnected, 10, 1, 1) ==
        doctest::Approx(5.0 * (std::log(10.0) + 1.0) / 10.0 + 5.0 / 150.0).epsilon(1e-15));
  CHECK(upper_bound_v1(MobilityScaling::constant(5.0), TopologyKind::Disconnected, 10, 1, 1) ==
        doctest::Approx(1.6846).epsilon(1e-4));
  CHECK(upper_bound_v1(MobilityScaling::linear(), TopologyKind::FullyConnected, 2, 1, 1) ==
        doctest::Approx(2.0 / 3.0 + 0.5).epsilon(1e-15));
  CHECK_THROWS_AS(upper_bound_v1(MobilityScaling::linear(), TopologyKind::FullyConnected, 1, 1, 1), DomainError);
}

TEST_CASE("DC bound is K / lambda") {
  for (auto s : {MobilityScaling::linear(), MobilityScaling::log_scaled(2.0), MobilityScaling::constant(3.0)})
    for (std::size_t n : {2u, 9u, 300u})
      CHECK(upper_bound_v1(s, TopologyKind::Disconnected, n, 1.5, 0.25) ==
            doctest::Approx(k_constant(s, n, 1.5) / 0.25).epsilon(1e-15));
}

TEST_CASE("scaling sweep") {
  const std::vector<std::size_t> ns = {2, 4};
  const auto r = scaling_sweep(MobilityScaling::linear(), TopologyKind::Disconnected, ns, 1, 1);
  REQUIRE(r.samples.size() == 2);
  CHECK(r.samples[0].n == 2);
  CHECK(r.samples[0].v1_exact == doctest::Approx(5.0 / 6.0));
  CHECK(r.samples[0].upper_bound == doctest::Approx(1.6931).epsilon(1e-4));
  CHECK(r.samples[1].v1_exact == doctest::Approx(77.0 / 60.0));
  CHECK(r.samples[1].upper_bound == doctest::Approx(std::log(4.0) + 1.0));
  CHECK(r.samples[1].upper_bound == doctest::Approx(2.386).epsilon(1e-3));
  CHECK(r.bounds_hold());

  const std::vector<std::size_t> two = {2};
  const auto rc = scaling_sweep(MobilityScaling::constant(5.0), TopologyKind::Disconnected, two, 1, 1);
  REQUIRE(rc.samples.size() == 1);
  CHECK(rc.samples[0].v1_exact <= rc.samples[0].upper_bound);

  const auto empty = scaling_sweep(MobilityScaling::linear(), TopologyKind::FullyConnected, {}, 1, 1);
  CHECK(empty.samples.empty());
  CHECK(empty.max_ratio == 0.0);

  const std::vector<std::size_t> bad = {1};
  CHECK_THROWS_AS(scaling_sweep(MobilityScaling::linear(), TopologyKind::Disconnected, bad, 1, 1), DomainError);
}

TEST_CASE("bounds hold strictly and ratios stay bounded on the log grid") {
  const auto grid = default_n_grid();
  REQUIRE(grid.front() == 2);
  REQUIRE(grid.back() == 2048);
  for (auto topo : {TopologyKind::Disconnected, TopologyKind::FullyConnected})
    for (auto s : {MobilityScaling::linear(), MobilityScaling::log_scaled(5.0), MobilityScaling::constant(5.0),
                   MobilityScaling::log_scaled(1.0), MobilityScaling::constant(1.0)})
      for (double ratio : {0.5, 1.0, 2.0, 5.0}) {
        const auto r = scaling_sweep(s, topo, grid, ratio, 1.0);
        for (const auto& sample : r.samples) {
          INFO("n=" << sample.n << " topo=" << to_string(topo) << " scaling=" << to_string(s.kind));
          CHECK(sample.v1_exact < sample.upper_bound);
        }
        CHECK(std::isfinite(r.max_ratio));
        // Largest observed is about 1.7 (log scaling, c = 1).
        CHECK(r.max_ratio < 2.0 * s.c * ratio);
      }
}
