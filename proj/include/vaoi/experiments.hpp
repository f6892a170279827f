#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vaoi/core.hpp"
#include "vaoi/csv.hpp"

namespace vaoi {

inline constexpr std::string_view kVersion = "1.0.0";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { Analytic, Simulate, Scaling, Cost, Validate, Figures };
enum class FigureId { Fig2, Fig3, Fig4, Fig5, Fig6, Fig7 };

std::string_view to_string(Command command);
std::string_view to_string(FigureId figure);
FigureId parse_figure_id(std::string_view name);

/// Everything that determines an experiment's output. `threads` only
/// changes scheduling and is excluded from the reproducibility hash.
struct ExperimentSpec {
  Command command = Command::Analytic;
  std::optional<FigureId> figure;
  NetworkConfig config;

  std::vector<std::size_t> n_list;
  std::vector<double> ratio_list;  // lambda_e / lambda
  std::vector<TopologyKind> topologies;
  std::vector<ScalingKind> scalings;

  /// Absolute simulated time. When unset each cell runs for
  /// `versions / lambda_e`, i.e. a fixed expected number of source versions.
  std::optional<double> horizon;
  double versions = 1e5;
  std::size_t replications = 10;
  std::uint64_t seed = 1;
  double warmup = 0.0;
  bool exchange = false;
  double lambda_m = 0.0;

  std::vector<double> alpha_list;
  std::vector<double> lambda_grid;

  std::size_t threads = 1;

  double horizon_for(double lambda_e) const;
  nlohmann::json canonical() const;
  std::uint64_t hash() const;
};

struct ExperimentOutput {
  std::string metadata;  // CSV comment line, without the leading '#'
  Table table;
  nlohmann::json detail;  // extra content for the JSON mirror only
  bool passed = true;     // validate: every cell within tolerance
  std::string summary;    // human-readable digest for the terminal
};

/// v1 (exact) and its bound for the config, or for every n in n_list.
ExperimentOutput run_analytic(const ExperimentSpec& spec);
/// Monte Carlo replications: one row per seed plus an aggregate row with CI.
ExperimentOutput run_simulate(const ExperimentSpec& spec);
ExperimentOutput run_scaling(const ExperimentSpec& spec);
/// Bound and exact cost over alpha x lambda, grid argmin and closed-form optimum.
ExperimentOutput run_cost(const ExperimentSpec& spec);
/// Theory vs Monte Carlo per cell; a cell passes when
/// |mean - theory| <= 3 * ci_half_width.
ExperimentOutput run_validate(const ExperimentSpec& spec);
ExperimentOutput run_figure_data(FigureId figure, const ExperimentSpec& spec);
ExperimentOutput run_experiment(const ExperimentSpec& spec);

/// Columns appended to the shared schema by cost tables.
inline const std::vector<std::string> kCostExtraColumns = {"alpha", "grid_argmin"};
inline const std::vector<std::string> kValidateColumns = {
    "mode", "topology", "scaling", "c", "n", "lambda_e", "lambda", "lambda_m",
    "theory", "sim_mean", "ci_half_width", "z", "status"};

inline constexpr double kValidateTolerance = 3.0;  // in CI half-widths

}  // namespace vaoi
