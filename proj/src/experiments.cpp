#include "vaoi/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "vaoi/analytic.hpp"
#include "vaoi/cost.hpp"
#include "vaoi/scaling.hpp"
#include "vaoi/sim.hpp"

namespace vaoi {

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Analytic: return "analytic";
    case Command::Simulate: return "simulate";
    case Command::Scaling: return "scaling";
    case Command::Cost: return "cost";
    case Command::Validate: return "validate";
    case Command::Figures: return "figures";
  }
  return "?";
}

std::string_view to_string(FigureId figure) {
  switch (figure) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3: return "fig3";
    case FigureId::Fig4: return "fig4";
    case FigureId::Fig5: return "fig5";
    case FigureId::Fig6: return "fig6";
    case FigureId::Fig7: return "fig7";
  }
  return "?";
}

FigureId parse_figure_id(std::string_view name) {
  for (auto f : {FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5, FigureId::Fig6,
                 FigureId::Fig7})
    if (to_string(f) == name) return f;
  throw UsageError("unknown figure id '" + std::string(name) + "' (expected fig2..fig7)");
}

double ExperimentSpec::horizon_for(double lambda_e) const {
  if (horizon) return *horizon;
  if (!(versions > 0.0)) throw UsageError("versions must be positive");
  return versions / lambda_e;
}

nlohmann::json ExperimentSpec::canonical() const {
  auto topo = nlohmann::json::array();
  for (auto t : topologies) topo.push_back(std::string(to_string(t)));
  auto scal = nlohmann::json::array();
  for (auto s : scalings) scal.push_back(std::string(to_string(s)));
  return {{"command", std::string(to_string(command))},
          {"figure", figure ? nlohmann::json(std::string(to_string(*figure))) : nlohmann::json(nullptr)},
          {"config", config_to_json(config)},
          {"n_list", n_list},
          {"ratio_list", ratio_list},
          {"topologies", topo},
          {"scalings", scal},
          {"horizon", horizon ? nlohmann::json(*horizon) : nlohmann::json(nullptr)},
          {"versions", versions},
          {"replications", replications},
          {"seed", seed},
          {"warmup", warmup},
          {"exchange", exchange},
          {"lambda_m", lambda_m},
          {"alpha_list", alpha_list},
          {"lambda_grid", lambda_grid}};
}

std::uint64_t ExperimentSpec::hash() const { return fnv1a64(canonical().dump()); }

namespace {

std::string metadata_for(const ExperimentSpec& spec, std::string_view label) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(spec.hash()));
  std::ostringstream out;
  out << "vaoi " << kVersion << " command=" << label << " seed=" << spec.seed
      << " rng=" << Rng::name() << " spec_hash=" << hash;
  return out.str();
}

Table age_table() { return Table{kAgeColumns, {}}; }

std::vector<std::size_t> or_default(const std::vector<std::size_t>& v, std::vector<std::size_t> d) {
  return v.empty() ? d : v;
}
std::vector<double> or_default(const std::vector<double>& v, std::vector<double> d) {
  return v.empty() ? d : v;
}

NetworkConfig with(NetworkConfig cfg, std::size_t n) {
  cfg.n = n;
  return cfg;
}

// Exact v1: the cardinality recursion, or the subset DP when contact
// mobility is switched off.
double exact_v1(const NetworkConfig& cfg) {
  if (cfg.mobility_enabled) return v_symmetric(cfg).v1();
  return solve_subset_dp(build_rates(cfg)).mean_of_size(1);
}

McEstimate run_cell(const ExperimentSpec& spec, const NetworkConfig& cfg) {
  const double horizon = spec.horizon_for(cfg.lambda_e);
  const SimOptions options{spec.warmup};
  if (spec.exchange) {
    return monte_carlo(
        [&](std::uint64_t seed) { return simulate_exchange(cfg, spec.lambda_m, horizon, seed, options); },
        spec.replications, spec.seed, spec.threads);
  }
  return monte_carlo(cfg, horizon, spec.replications, spec.seed, spec.threads, options);
}

}  // namespace

ExperimentOutput run_analytic(const ExperimentSpec& spec) {
  ExperimentOutput out;
  out.metadata = metadata_for(spec, "analytic");
  out.table = age_table();
  out.detail = nlohmann::json::array();
  for (std::size_t n : or_default(spec.n_list, {spec.config.n})) {
    const NetworkConfig cfg = with(spec.config, n);
    const double v1 = exact_v1(cfg);
    out.table.add(age_row(cfg, RowSource::Theory, v1));
    if (n >= 2 && cfg.mobility_enabled)
      out.table.add(age_row(cfg, RowSource::Bound,
                            upper_bound_v1(cfg.scaling, cfg.topology, n, cfg.lambda_e, cfg.lambda)));
    if (cfg.mobility_enabled)
      out.detail.push_back({{"n", n}, {"v_by_size", v_symmetric(cfg).by_size}});
  }
  return out;
}

ExperimentOutput run_simulate(const ExperimentSpec& spec) {
  const NetworkConfig& cfg = spec.config;
  cfg.validate();
  const McEstimate est = run_cell(spec, cfg);

  ExperimentOutput out;
  out.metadata = metadata_for(spec, spec.exchange ? "simulate-exchange" : "simulate");
  out.table = age_table();
  out.detail = nlohmann::json::array();
  for (const auto& rep : est.replications) {
    out.table.add(age_row(cfg, RowSource::Simulation, rep.network_avg_age, std::nullopt, rep.seed));
    out.detail.push_back({{"seed", rep.seed},
                          {"horizon", rep.horizon},
                          {"events", rep.events_processed},
                          {"network_avg_age", rep.network_avg_age},
                          {"per_node_avg_age", rep.per_node_time_avg_age}});
  }
  out.table.add(age_row(cfg, RowSource::Simulation, est.mean, est.half_width_95, spec.seed));
  std::ostringstream s;
  s << "mean " << format_double(est.mean) << " +/- " << format_double(est.half_width_95) << " (95%, "
    << spec.replications << " replications)";
  out.summary = s.str();
  return out;
}

ExperimentOutput run_scaling(const ExperimentSpec& spec) {
  const NetworkConfig& cfg = spec.config;
  const auto grid = or_default(spec.n_list, default_n_grid());
  const ScalingReport report = scaling_sweep(cfg.scaling, cfg.topology, grid, cfg.lambda_e, cfg.lambda);

  ExperimentOutput out;
  out.metadata = metadata_for(spec, "scaling");
  out.table = age_table();
  for (const auto& s : report.samples) {
    const NetworkConfig c = with(cfg, s.n);
    out.table.add(age_row(c, RowSource::Theory, s.v1_exact));
    out.table.add(age_row(c, RowSource::Bound, s.upper_bound));
  }
  out.passed = report.bounds_hold();
  out.detail = {{"max_ratio", report.max_ratio},
                {"ratio_non_increasing", report.ratio_non_increasing},
                {"bounds_hold", out.passed}};
  out.summary = "max v1/g(n) = " + format_double(report.max_ratio) +
                (out.passed ? ", all bounds hold" : ", BOUND VIOLATED");
  return out;
}

namespace {

Table cost_table() {
  Table t{kAgeColumns, {}};
  t.columns.insert(t.columns.end(), kCostExtraColumns.begin(), kCostExtraColumns.end());
  return t;
}

void append_cost_rows(Table& table, const NetworkConfig& base, const CostTable& costs) {
  for (const auto& row : costs.rows) {
    NetworkConfig cfg = base;
    cfg.lambda = row.lambda;
    auto bound = age_row(cfg, RowSource::Bound, row.cost_bound);
    bound.push_back(row.alpha);
    bound.push_back(row.is_grid_argmin);
    table.add(std::move(bound));
    auto exact = age_row(cfg, RowSource::Theory, row.cost_exact);
    exact.push_back(row.alpha);
    exact.push_back(false);
    table.add(std::move(exact));
  }
  for (const auto& p : costs.profiles) {
    NetworkConfig cfg = base;
    cfg.lambda = p.lambda_star;
    auto opt = age_row(cfg, RowSource::Optimum, p.j_star);
    opt.push_back(p.alpha);
    opt.push_back(false);
    table.add(std::move(opt));
  }
}

const std::vector<double> kDefaultAlphas = {0.25, 0.5, 0.75};

}  // namespace

ExperimentOutput run_cost(const ExperimentSpec& spec) {
  const NetworkConfig& cfg = spec.config;
  const auto alphas = or_default(spec.alpha_list, kDefaultAlphas);
  const auto grid = or_default(spec.lambda_grid, log_grid(1e-3, 10.0, 81));
  const CostTable costs = cost_sweep(alphas, grid, cfg.scaling, cfg.topology, cfg.n, cfg.lambda_e);

  ExperimentOutput out;
  out.metadata = metadata_for(spec, "cost");
  out.table = cost_table();
  append_cost_rows(out.table, cfg, costs);
  std::ostringstream s;
  for (const auto& p : costs.profiles)
    s << "alpha=" << format_double(p.alpha) << " K=" << format_double(p.k)
      << " lambda*=" << format_double(p.lambda_star) << " J*=" << format_double(p.j_star) << '\n';
  out.summary = s.str();
  return out;
}

ExperimentOutput run_validate(const ExperimentSpec& spec) {
  const auto topologies = spec.exchange ? std::vector<TopologyKind>{TopologyKind::Disconnected}
                          : spec.topologies.empty()
                              ? std::vector<TopologyKind>{TopologyKind::Disconnected, TopologyKind::FullyConnected}
                              : spec.topologies;
  const auto scalings = spec.scalings.empty()
                            ? std::vector<ScalingKind>{ScalingKind::Linear, ScalingKind::LogScaled,
                                                       ScalingKind::Constant}
                            : spec.scalings;
  const auto n_list = or_default(spec.n_list, {4, 16});
  const auto ratios = or_default(spec.ratio_list, {0.5, 1.0, 2.0, 5.0});

  ExperimentOutput out;
  out.metadata = metadata_for(spec, spec.exchange ? "validate-exchange" : "validate");
  out.table = Table{kValidateColumns, {}};
  std::size_t passed = 0, total = 0;

  // Exchange mobility has no f(n); one scaling row per cell is enough.
  const auto cell_scalings = spec.exchange ? std::vector<ScalingKind>{scalings.front()} : scalings;
  for (auto topology : topologies) {
    for (auto kind : cell_scalings) {
      for (std::size_t n : n_list) {
        for (double ratio : ratios) {
          NetworkConfig cfg = spec.config;
          cfg.n = n;
          cfg.topology = topology;
          cfg.scaling.kind = kind;
          cfg.lambda_e = ratio * cfg.lambda;
          cfg.validate();
          const double theory =
              spec.exchange ? v_exchange_dc(n, cfg.lambda_e, cfg.lambda) : exact_v1(cfg);
          const McEstimate est = run_cell(spec, cfg);
          const double diff = est.mean - theory;
          const double z = est.half_width_95 > 0.0 ? diff / est.half_width_95
                           : diff == 0.0           ? 0.0
                                                   : std::copysign(INFINITY, diff);
          const bool ok = std::abs(diff) <= kValidateTolerance * est.half_width_95;
          ++total;
          passed += ok;
          out.table.add({spec.exchange ? "exchange" : "contact", std::string(to_string(topology)),
                         std::string(to_string(kind)), cfg.scaling.c, n, cfg.lambda_e, cfg.lambda,
                         spec.exchange ? spec.lambda_m : 0.0, theory, est.mean, est.half_width_95, z,
                         ok ? "PASS" : "FAIL"});
        }
      }
    }
  }
  out.passed = passed == total;
  out.summary = std::to_string(passed) + "/" + std::to_string(total) + " cells PASS";
  return out;
}

namespace {

struct FigurePlan {
  ScalingKind scaling;
  bool theory;
  bool simulation;
};

FigurePlan plan_for(FigureId figure) {
  switch (figure) {
    case FigureId::Fig2: return {ScalingKind::Linear, true, true};
    case FigureId::Fig3: return {ScalingKind::LogScaled, true, false};
    case FigureId::Fig4: return {ScalingKind::LogScaled, true, true};
    case FigureId::Fig5: return {ScalingKind::Constant, true, false};
    case FigureId::Fig6: return {ScalingKind::Constant, true, true};
    case FigureId::Fig7: break;
  }
  throw UsageError("figure has no age plan");
}

}  // namespace

ExperimentOutput run_figure_data(FigureId figure, const ExperimentSpec& spec) {
  ExperimentOutput out;
  out.metadata = metadata_for(spec, to_string(figure));

  if (figure == FigureId::Fig7) {
    out.table = cost_table();
    const auto alphas = or_default(spec.alpha_list, kDefaultAlphas);
    const auto grid = or_default(spec.lambda_grid, log_grid(1e-3, 10.0, 81));
    for (auto kind : {ScalingKind::Linear, ScalingKind::LogScaled, ScalingKind::Constant}) {
      const NetworkConfig base{1000, 1.0, 1.0, TopologyKind::Disconnected, {kind, 1.0}, true};
      append_cost_rows(out.table, base,
                       cost_sweep(alphas, grid, base.scaling, base.topology, base.n, base.lambda_e));
    }
    return out;
  }

  const FigurePlan plan = plan_for(figure);
  const auto ratios = or_default(spec.ratio_list, {0.5, 1.0, 2.0, 5.0});
  const auto theory_n = or_default(spec.n_list, {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024});
  const auto sim_n = or_default(spec.n_list, {2, 4, 8, 16, 32});
  out.table = age_table();

  for (auto topology : {TopologyKind::Disconnected, TopologyKind::FullyConnected}) {
    for (double ratio : ratios) {
      NetworkConfig cfg{2, ratio, 1.0, topology, {plan.scaling, 5.0}, true};
      if (plan.theory)
        for (std::size_t n : theory_n) {
          cfg.n = n;
          out.table.add(age_row(cfg, RowSource::Theory, v_symmetric(cfg).v1()));
        }
      if (plan.simulation)
        for (std::size_t n : sim_n) {
          cfg.n = n;
          ExperimentSpec cell = spec;
          cell.exchange = false;
          const McEstimate est = run_cell(cell, cfg);
          out.table.add(age_row(cfg, RowSource::Simulation, est.mean, est.half_width_95, spec.seed));
        }
    }
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
  switch (spec.command) {
    case Command::Analytic: return run_analytic(spec);
    case Command::Simulate: return run_simulate(spec);
    case Command::Scaling: return run_scaling(spec);
    case Command::Cost: return run_cost(spec);
    case Command::Validate: return run_validate(spec);
    case Command::Figures:
      if (!spec.figure) throw UsageError("figures requires a figure id");
      return run_figure_data(*spec.figure, spec);
  }
  throw UsageError("unknown command");
}

}  // namespace vaoi
