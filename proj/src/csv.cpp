#include "vaoi/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vaoi {

std::string_view to_string(RowSource source) {
  switch (source) {
    case RowSource::Theory: return "theory";
    case RowSource::Simulation: return "simulation";
    case RowSource::Bound: return "bound";
    case RowSource::Optimum: return "optimum";
  }
  return "?";
}

void Table::add(std::vector<nlohmann::json> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match table columns");
  rows.push_back(std::move(row));
}

std::vector<nlohmann::json> age_row(const NetworkConfig& config, RowSource source, double value,
                                    std::optional<double> ci_half_width,
                                    std::optional<std::uint64_t> seed) {
  return {std::string(to_string(config.topology)),
          std::string(to_string(config.scaling.kind)),
          config.scaling.c,
          config.n,
          config.lambda_e,
          config.lambda,
          std::string(to_string(source)),
          value,
          ci_half_width ? nlohmann::json(*ci_half_width) : nlohmann::json(nullptr),
          seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)};
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string render_cell(const nlohmann::json& cell) {
  if (cell.is_null()) return {};
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_boolean()) return cell.get<bool>() ? "1" : "0";
  if (cell.is_number_unsigned()) return std::to_string(cell.get<std::uint64_t>());
  if (cell.is_number_integer()) return std::to_string(cell.get<std::int64_t>());
  if (cell.is_number_float()) return format_double(cell.get<double>());
  throw std::logic_error("table cells must be scalars");
}

}  // namespace

void write_csv(std::ostream& out, std::string_view metadata, const Table& table) {
  out << "# " << metadata << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render_cell(row[i]);
    out << '\n';
  }
}

std::string to_csv(std::string_view metadata, const Table& table) {
  std::ostringstream out;
  write_csv(out, metadata, table);
  return out.str();
}

nlohmann::json to_json(const Table& table) {
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  return rows;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace vaoi
