#include "cli/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace wavepkt::cli {

void CurveTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::logic_error("row arity does not match the column count");
  rows.push_back(std::move(row));
}

std::size_t CurveTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return i;
  throw std::out_of_range("no column named " + name);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const CurveTable& table) {
  auto line = [&](auto&& cell) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) os << ',';
      os << cell(i);
    }
    os << '\n';
  };
  line([&](std::size_t i) { return table.columns[i].name; });
  line([&](std::size_t i) { return table.columns[i].unit; });
  for (const auto& row : table.rows) line([&](std::size_t i) { return format_number(row[i]); });
}

void write_json(std::ostream& os, const CurveTable& table, const nlohmann::json& config) {
  nlohmann::ordered_json doc;
  doc["config"] = config;
  doc["columns"] = nlohmann::json::array();
  for (const auto& c : table.columns) doc["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  doc["rows"] = table.rows;
  if (!table.metadata.empty()) doc["metadata"] = table.metadata;
  os << doc.dump(2) << '\n';
}

}  // namespace wavepkt::cli
