// Command-line front end: analytic ages, simulation, scaling sweeps, cost
// trade-off and figure data, written as CSV with an optional JSON mirror.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or config error.

#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "vaoi/analytic.hpp"
#include "vaoi/experiments.hpp"
#include "vaoi/sim.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::size_t n = 0;
  std::vector<std::size_t> n_list;
  double lambda_e = 0.0;
  double lambda = 0.0;
  std::string topology;
  std::string scaling;
  double c = 0.0;
  bool no_mobility = false;
  double horizon = 0.0;
  double versions = 0.0;
  std::size_t reps = 10;
  std::uint64_t seed = 1;
  std::string out;
  std::string json_out;
  bool exchange = false;
  double lambda_m = 0.0;
  double warmup = 0.0;
  std::vector<double> ratios;
  std::vector<double> alphas;
  std::vector<double> lambda_grid;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  std::string figure;
};

struct Bound {
  CLI::App* app;
  std::map<std::string, CLI::Option*> opts;
  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }
};

Bound add_options(CLI::App* sub, Flags& f) {
  Bound b{sub, {}};
  auto& o = b.opts;
  o["config"] = sub->add_option("--config", f.config_path, "JSON network config")->check(CLI::ExistingFile);
  o["n"] = sub->add_option("--n", f.n, "Number of nodes (source excluded)")->check(CLI::PositiveNumber);
  o["n-list"] = sub->add_option("--n-list", f.n_list, "Comma-separated node counts")->delimiter(',');
  o["lambda-e"] = sub->add_option("--lambda-e", f.lambda_e, "Source self-update rate");
  o["lambda"] = sub->add_option("--lambda", f.lambda, "Aggregate source/gossip/mobility base rate");
  o["topology"] = sub->add_option("--topology", f.topology, "dc|fc")->check(CLI::IsMember({"dc", "fc"}));
  o["scaling"] = sub->add_option("--scaling", f.scaling, "linear|log|const")
                     ->check(CLI::IsMember({"linear", "log", "const"}));
  o["c"] = sub->add_option("--c", f.c, "Scaling constant c");
  o["no-mobility"] = sub->add_flag("--no-mobility", f.no_mobility, "Disable contact mobility");
  o["horizon"] = sub->add_option("--horizon", f.horizon, "Simulated time per replication");
  o["versions"] = sub->add_option("--versions", f.versions,
                                  "Horizon as expected source versions (T = versions / lambda_e)");
  o["reps"] = sub->add_option("--reps", f.reps, "Monte Carlo replications");
  o["seed"] = sub->add_option("--seed", f.seed, "Base seed; replication r uses seed + r");
  o["out"] = sub->add_option("--out", f.out, "CSV output path (default stdout)");
  o["json"] = sub->add_option("--json", f.json_out, "Optional JSON mirror path");
  o["exchange"] = sub->add_flag("--exchange", f.exchange, "Exchange mobility instead of contact mobility");
  o["lambda-m"] = sub->add_option("--lambda-m", f.lambda_m, "Pairwise exchange rate");
  o["warmup"] = sub->add_option("--warmup", f.warmup, "Fraction of the horizon discarded")
                    ->check(CLI::Range(0.0, 0.999999));
  o["ratios"] = sub->add_option("--ratios", f.ratios, "Comma-separated lambda_e/lambda values")->delimiter(',');
  o["alphas"] = sub->add_option("--alphas", f.alphas, "Comma-separated cost weights")->delimiter(',');
  o["lambda-grid"] = sub->add_option("--lambda-grid", f.lambda_grid, "Comma-separated lambda values")
                         ->delimiter(',');
  o["threads"] = sub->add_option("--threads", f.threads, "Worker threads for replications")
                     ->check(CLI::PositiveNumber);
  return b;
}

vaoi::ExperimentSpec build_spec(vaoi::Command command, const Bound& b, const Flags& f) {
  vaoi::ExperimentSpec spec;
  spec.command = command;
  if (b.given("config")) spec.config = vaoi::load_config(f.config_path);
  if (command == vaoi::Command::Validate || command == vaoi::Command::Figures) spec.config.scaling.c = 5.0;

  auto& cfg = spec.config;
  if (b.given("n")) cfg.n = f.n;
  if (b.given("lambda-e")) cfg.lambda_e = f.lambda_e;
  if (b.given("lambda")) cfg.lambda = f.lambda;
  if (b.given("topology")) cfg.topology = vaoi::parse_topology(f.topology);
  if (b.given("scaling")) cfg.scaling.kind = vaoi::parse_scaling(f.scaling);
  if (b.given("c")) cfg.scaling.c = f.c;
  if (f.no_mobility) cfg.mobility_enabled = false;

  if (command == vaoi::Command::Validate) {
    if (b.given("topology")) spec.topologies = {cfg.topology};
    if (b.given("scaling")) spec.scalings = {cfg.scaling.kind};
    spec.versions = 1e6;
  }
  spec.n_list = f.n_list;
  spec.ratio_list = f.ratios;
  if (b.given("horizon")) spec.horizon = f.horizon;
  if (b.given("versions")) spec.versions = f.versions;
  spec.replications = f.reps;
  spec.seed = f.seed;
  spec.warmup = f.warmup;
  spec.exchange = f.exchange;
  spec.lambda_m = f.lambda_m;
  if (b.given("lambda-m") && !f.exchange) throw vaoi::UsageError("--lambda-m requires --exchange");
  spec.alpha_list = f.alphas;
  spec.lambda_grid = f.lambda_grid;
  spec.threads = f.threads;
  if (command == vaoi::Command::Analytic || command == vaoi::Command::Simulate || command == vaoi::Command::Cost)
    cfg.validate();
  return spec;
}

void emit(const vaoi::ExperimentOutput& out, const Flags& f) {
  if (f.out.empty()) {
    vaoi::write_csv(std::cout, out.metadata, out.table);
  } else {
    std::ofstream file(f.out);
    if (!file) throw std::runtime_error("cannot write " + f.out);
    vaoi::write_csv(file, out.metadata, out.table);
  }
  if (!f.json_out.empty()) {
    std::ofstream file(f.json_out);
    if (!file) throw std::runtime_error("cannot write " + f.json_out);
    nlohmann::json doc = {{"metadata", out.metadata}, {"rows", vaoi::to_json(out.table)}};
    if (!out.detail.is_null()) doc["detail"] = out.detail;
    file << doc.dump(2) << '\n';
  }
  if (!out.summary.empty()) std::cerr << out.summary << (out.summary.back() == '\n' ? "" : "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Version age of information in gossip networks with contact mobility"};
  app.require_subcommand(1);

  Flags flags;
  std::vector<std::pair<vaoi::Command, Bound>> subs;
  auto add_sub = [&](vaoi::Command cmd, const char* desc) -> Bound& {
    auto* sub = app.add_subcommand(std::string(vaoi::to_string(cmd)), desc);
    subs.emplace_back(cmd, add_options(sub, flags));
    return subs.back().second;
  };
  add_sub(vaoi::Command::Analytic, "Exact steady-state v1 and its closed-form bound");
  add_sub(vaoi::Command::Simulate, "Monte Carlo estimate of the network average age");
  add_sub(vaoi::Command::Scaling, "Exact v1 against the scaling bounds over n");
  add_sub(vaoi::Command::Cost, "Age/mobility cost trade-off sweep");
  add_sub(vaoi::Command::Validate, "Simulation vs theory report; exit 1 on any FAIL");
  add_sub(vaoi::Command::Figures, "Data behind a figure: fig2..fig7")
      .app->add_option("figure", flags.figure, "Figure id")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const auto& [cmd, bound] : subs) {
      if (!bound.app->parsed()) continue;
      auto spec = build_spec(cmd, bound, flags);
      if (cmd == vaoi::Command::Figures) spec.figure = vaoi::parse_figure_id(flags.figure);
      const auto out = vaoi::run_experiment(spec);
      emit(out, flags);
      return out.passed ? 0 : 1;
    }
  } catch (const vaoi::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const vaoi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const vaoi::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
