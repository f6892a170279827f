#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vaoi/core.hpp"

namespace vaoi {

/// Column schema shared by every per-figure CSV.
inline const std::vector<std::string> kAgeColumns = {
    "topology", "scaling", "c", "n", "lambda_e", "lambda", "source", "value", "ci_half_width", "seed"};

enum class RowSource { Theory, Simulation, Bound, Optimum };
std::string_view to_string(RowSource source);

/// A table whose cells are JSON scalars (string, number, null). Null
/// renders as an empty CSV field.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;

  void add(std::vector<nlohmann::json> row);
};

/// Fixed-schema row: config columns plus source/value/ci/seed.
std::vector<nlohmann::json> age_row(const NetworkConfig& config, RowSource source, double value,
                                    std::optional<double> ci_half_width = std::nullopt,
                                    std::optional<std::uint64_t> seed = std::nullopt);

/// 12 significant digits, shortest of %e/%f style.
std::string format_double(double x);

/// Writes `# <metadata>` then the header and rows.
void write_csv(std::ostream& out, std::string_view metadata, const Table& table);
std::string to_csv(std::string_view metadata, const Table& table);
nlohmann::json to_json(const Table& table);

/// FNV-1a, 64-bit.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace vaoi
