#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vaoi/core.hpp"

using namespace vaoi;

TEST_CASE("f_eval per scaling kind") {
  CHECK(f_eval(MobilityScaling::linear(), 10) == 10.0);
  CHECK(f_eval(MobilityScaling::constant(5.0), 3) == 5.0);
  CHECK(f_eval(MobilityScaling::constant(5.0), 1000) == 5.0);
  CHECK(f_eval(MobilityScaling::log_scaled(5.0), 8) == doctest::Approx(10.397207708399179).epsilon(1e-14));
  CHECK_THROWS_AS(f_eval(MobilityScaling::log_scaled(5.0), 1), DomainError);
}

TEST_CASE("build_rates: single node anchor") {
  const auto r = build_rates({1, 1.0, 1.0, TopologyKind::Disconnected, MobilityScaling::linear(), true});
  REQUIRE(r.n == 1);
  CHECK(r.source_to_node == std::vector<double>{1.0});
  CHECK(r.gossip[0][0] == 0.0);
  CHECK(r.mobility[0][1] == 1.0);
  CHECK(r.mobility[1][0] == 1.0);
  CHECK(r.mobility[0][0] == 0.0);
}

TEST_CASE("build_rates: FC n=2 with constant scaling") {
  const auto r = build_rates({2, 1.0, 1.0, TopologyKind::FullyConnected, MobilityScaling::constant(5.0), true});
  CHECK(r.gossip[0][1] == 1.0);
  CHECK(r.gossip[1][0] == 1.0);
  for (std::size_t i = 0; i <= 2; ++i)
    for (std::size_t j = 0; j <= 2; ++j) CHECK(r.mobility[i][j] == (i == j ? 0.0 : 0.2));
}

TEST_CASE("build_rates: DC n=4 linear has ten contact pairs at 1/4") {
  const auto r = build_rates({4, 1.0, 1.0, TopologyKind::Disconnected, MobilityScaling::linear(), true});
  CHECK(r.source_to_node == std::vector<double>(4, 0.25));
  for (const auto& row : r.gossip)
    for (double g : row) CHECK(g == 0.0);
  int pairs = 0;
  for (std::size_t i = 0; i <= 4; ++i)
    for (std::size_t j = i + 1; j <= 4; ++j) {
      CHECK(r.mobility[i][j] == 0.25);
      ++pairs;
    }
  CHECK(pairs == 10);
  CHECK(r.has_full_mobility());
}

TEST_CASE("build_rates: mobility disabled zeroes the contact matrix") {
  const auto r = build_rates({3, 1.0, 2.0, TopologyKind::FullyConnected, MobilityScaling::linear(), false});
  for (const auto& row : r.mobility)
    for (double m : row) CHECK(m == 0.0);
  CHECK_FALSE(r.has_full_mobility());
  CHECK(r.gossip[0][2] == 1.0);
}

TEST_CASE("build_rates invariants over a grid") {
  for (auto topo : {TopologyKind::Disconnected, TopologyKind::FullyConnected})
    for (auto scaling : {MobilityScaling::linear(), MobilityScaling::log_scaled(5.0), MobilityScaling::constant(0.5)})
      for (std::size_t n : {2u, 3u, 7u, 20u}) {
        const double lambda = 1.7;
        const auto r = build_rates({n, 0.3, lambda, topo, scaling, true});
        r.validate();
        CHECK(std::abs(std::accumulate(r.source_to_node.begin(), r.source_to_node.end(), 0.0) - lambda) < 1e-12);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const double expected =
                (topo == TopologyKind::FullyConnected && i != j) ? lambda / static_cast<double>(n - 1) : 0.0;
            CHECK(r.gossip[i][j] == expected);
          }
        for (std::size_t i = 0; i <= n; ++i)
          for (std::size_t j = 0; j <= n; ++j) CHECK(r.mobility[i][j] == r.mobility[j][i]);
        CHECK(r.has_full_mobility());
      }
}

TEST_CASE("build_rates is invariant under node relabeling") {
  // Symmetric factory: every permutation of node rows/columns leaves the set unchanged.
  const auto r = build_rates({5, 1.0, 1.0, TopologyKind::FullyConnected, MobilityScaling::constant(2.0), true});
  std::vector<std::size_t> perm = {0, 1, 2, 3, 4};
  do {
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(r.source_to_node[perm[i]] == r.source_to_node[i]);
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK(r.gossip[perm[i]][perm[j]] == r.gossip[i][j]);
        CHECK(r.mobility[perm[i] + 1][perm[j] + 1] == r.mobility[i + 1][j + 1]);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(build_rates({0, 1.0, 1.0, TopologyKind::Disconnected, MobilityScaling::linear(), true}), ConfigError);
  CHECK_THROWS_AS(build_rates({2, 0.0, 1.0, TopologyKind::Disconnected, MobilityScaling::linear(), true}), ConfigError);
  CHECK_THROWS_AS(build_rates({2, 1.0, -1.0, TopologyKind::Disconnected, MobilityScaling::linear(), true}), ConfigError);
  CHECK_THROWS_AS(build_rates({1, 1.0, 1.0, TopologyKind::Disconnected, MobilityScaling::log_scaled(5.0), true}),
                  ConfigError);
  CHECK_THROWS_AS(build_rates({3, 1.0, 1.0, TopologyKind::Disconnected, MobilityScaling::constant(0.0), true}),
                  ConfigError);
}

TEST_CASE("n = 1: DC and FC coincide") {
  const auto dc = build_rates({1, 1.0, 1.0, TopologyKind::Disconnected, MobilityScaling::constant(3.0), true});
  const auto fc = build_rates({1, 1.0, 1.0, TopologyKind::FullyConnected, MobilityScaling::constant(3.0), true});
  CHECK(dc.gossip == fc.gossip);
  CHECK(dc.mobility == fc.mobility);
}

TEST_CASE("RateSet validation catches asymmetric mobility") {
  auto r = RateSet::empty(2, 1.0);
  r.mobility[0][1] = 1.0;
  CHECK_THROWS_AS(r.validate(), ConfigError);
  r.mobility[1][0] = 1.0;
  CHECK_NOTHROW(r.validate());
  r.gossip[1][1] = 0.5;
  CHECK_THROWS_AS(r.validate(), ConfigError);
}

TEST_CASE("config JSON loading") {
  const auto doc = nlohmann::json::parse(R"({
    "n": 8, "lambda_e": 2.0, "lambda": 0.5, "topology": "fc",
    "scaling": {"kind": "log", "c": 5}, "mobility": true})");
  const auto cfg = config_from_json(doc);
  CHECK(cfg.n == 8);
  CHECK(cfg.lambda_e == 2.0);
  CHECK(cfg.lambda == 0.5);
  CHECK(cfg.topology == TopologyKind::FullyConnected);
  CHECK(cfg.scaling.kind == ScalingKind::LogScaled);
  CHECK(cfg.scaling.c == 5.0);
  CHECK(cfg.mobility_enabled);

  CHECK(config_from_json(config_to_json(cfg)).n == 8);

  SUBCASE("unknown top-level key") {
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n": 2, "gamma": 1})")), ConfigError);
  }
  SUBCASE("unknown scaling key") {
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"scaling": {"kind": "const", "k": 1}})")),
                    ConfigError);
  }
  SUBCASE("bad enum") {
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"topology": "ring"})")), ConfigError);
  }
  SUBCASE("wrong type") {
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"lambda": "fast"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n": 2.5})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n": 0})")), ConfigError);
  }
}
