#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "vaoi/cost.hpp"
#include "vaoi/experiments.hpp"

using namespace vaoi;

namespace {

std::size_t col(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  FAIL("missing column " << name);
  return 0;
}

}  // namespace

TEST_CASE("figure ids") {
  CHECK(parse_figure_id("fig2") == FigureId::Fig2);
  CHECK(parse_figure_id("fig7") == FigureId::Fig7);
  CHECK_THROWS_AS(parse_figure_id("fig9"), UsageError);
  CHECK_THROWS_AS(parse_figure_id(""), UsageError);
}

TEST_CASE("fig2 theory contains the two-node anchor") {
  ExperimentSpec spec;
  spec.command = Command::Figures;
  spec.figure = FigureId::Fig2;
  spec.n_list = {2};
  spec.horizon = 200.0;
  spec.replications = 2;
  const auto out = run_experiment(spec);
  const auto& t = out.table;
  CHECK(t.columns == kAgeColumns);
  bool found = false;
  for (const auto& row : t.rows) {
    if (row[col(t, "topology")] == "dc" && row[col(t, "source")] == "theory" && row[col(t, "n")] == 2 &&
        row[col(t, "lambda_e")] == 1.0) {
      CHECK(row[col(t, "value")].get<double>() == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
      CHECK(row[col(t, "scaling")] == "linear");
      found = true;
    }
  }
  CHECK(found);
  // 2 topologies x 4 ratios x (theory + simulation)
  CHECK(t.rows.size() == 16);
}

TEST_CASE("fig3 and fig5 are theory only") {
  ExperimentSpec spec;
  spec.n_list = {2, 8};
  for (auto f : {FigureId::Fig3, FigureId::Fig5}) {
    const auto out = run_figure_data(f, spec);
    for (const auto& row : out.table.rows) CHECK(row[col(out.table, "source")] == "theory");
    CHECK(out.table.rows.size() == 16);
  }
}

TEST_CASE("fig7: one grid argmin per scaling and alpha, next to lambda*") {
  ExperimentSpec spec;
  const auto out = run_figure_data(FigureId::Fig7, spec);
  const auto& t = out.table;
  const auto grid = log_grid(1e-3, 10.0, 81);
  std::map<std::pair<std::string, double>, std::vector<double>> argmins;
  std::map<std::pair<std::string, double>, double> optima;
  for (const auto& row : t.rows) {
    const auto key = std::make_pair(row[col(t, "scaling")].get<std::string>(), row[col(t, "alpha")].get<double>());
    CHECK(row[col(t, "n")] == 1000);
    if (row[col(t, "grid_argmin")] == true) argmins[key].push_back(row[col(t, "lambda")].get<double>());
    if (row[col(t, "source")] == "optimum") optima[key] = row[col(t, "lambda")].get<double>();
  }
  CHECK(optima.size() == 9);
  for (const auto& [key, ls] : optima) {
    INFO(key.first << " alpha=" << key.second);
    REQUIRE(argmins[key].size() == 1);
    const double step = grid[1] / grid[0];
    CHECK(ls <= argmins[key][0] * step * (1 + 1e-12));
    CHECK(ls >= argmins[key][0] / step * (1 - 1e-12));
  }
}

TEST_CASE("csv output is deterministic and stamped") {
  ExperimentSpec spec;
  spec.command = Command::Simulate;
  spec.config = {3, 1.0, 1.0, TopologyKind::FullyConnected, MobilityScaling::constant(5.0), true};
  spec.horizon = 500.0;
  spec.replications = 4;
  spec.seed = 17;
  const auto a = run_experiment(spec);
  spec.threads = 3;
  const auto b = run_experiment(spec);
  const auto csv_a = to_csv(a.metadata, a.table);
  CHECK(csv_a == to_csv(b.metadata, b.table));
  CHECK(a.table.rows.size() == 5);
  CHECK(csv_a.rfind("# vaoi 1.0.0 command=simulate seed=17 rng=pcg64 spec_hash=", 0) == 0);

  spec.seed = 18;
  CHECK(run_experiment(spec).metadata != a.metadata);

  std::istringstream lines(csv_a);
  std::string first, header;
  std::getline(lines, first);
  std::getline(lines, header);
  CHECK(header == "topology,scaling,c,n,lambda_e,lambda,source,value,ci_half_width,seed");
}

TEST_CASE("spec hash ignores thread count only") {
  ExperimentSpec a;
  ExperimentSpec b = a;
  b.threads = 8;
  CHECK(a.hash() == b.hash());
  b.replications = 11;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("csv cell formatting") {
  Table t{{"a", "b", "c", "d"}, {}};
  t.add({"x", 0.1, nullptr, true});
  CHECK(to_csv("m", t) == "# m\na,b,c,d\nx,0.1,,1\n");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK_THROWS(t.add({"short"}));
}

TEST_CASE("validate: exchange cell passes") {
  ExperimentSpec spec;
  spec.command = Command::Validate;
  spec.exchange = true;
  spec.lambda_m = 1.0;
  spec.n_list = {4};
  spec.ratio_list = {1.0};
  spec.versions = 2e4;
  spec.replications = 8;
  const auto out = run_experiment(spec);
  REQUIRE(out.table.rows.size() == 1);
  CHECK(out.table.rows[0][col(out.table, "theory")] == 4.0);
  CHECK(out.passed);
  CHECK(out.summary == "1/1 cells PASS");
}

TEST_CASE("validate: short horizons still produce a full report") {
  ExperimentSpec spec;
  spec.command = Command::Validate;
  spec.n_list = {4};
  spec.ratio_list = {0.5, 2.0};
  spec.topologies = {TopologyKind::FullyConnected};
  spec.config.scaling.c = 5.0;
  spec.versions = 50;
  spec.replications = 3;
  const auto out = run_experiment(spec);
  CHECK(out.table.columns == kValidateColumns);
  CHECK(out.table.rows.size() == 6);
  for (const auto& row : out.table.rows) {
    const auto status = row[col(out.table, "status")].get<std::string>();
    CHECK((status == "PASS" || status == "FAIL"));
    const double z = row[col(out.table, "z")].get<double>();
    CHECK((status == "PASS") == (std::abs(z) <= kValidateTolerance));
  }
}

TEST_CASE("analytic and scaling commands") {
  ExperimentSpec spec;
  spec.config = {4, 1.0, 1.0, TopologyKind::Disconnected, MobilityScaling::linear(), true};
  const auto a = run_analytic(spec);
  REQUIRE(a.table.rows.size() == 2);
  CHECK(a.table.rows[0][col(a.table, "value")].get<double>() == doctest::Approx(77.0 / 60.0).epsilon(1e-12));
  CHECK(a.table.rows[1][col(a.table, "source")] == "bound");

  spec.config.mobility_enabled = false;
  spec.config.n = 1;
  const auto off = run_analytic(spec);
  REQUIRE(off.table.rows.size() == 1);
  CHECK(off.table.rows[0][col(off.table, "value")].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  spec.config = {4, 1.0, 1.0, TopologyKind::FullyConnected, MobilityScaling::log_scaled(5.0), true};
  spec.n_list = {2, 16, 128};
  const auto s = run_scaling(spec);
  CHECK(s.passed);
  CHECK(s.table.rows.size() == 6);
}
