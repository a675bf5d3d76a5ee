#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace wavepkt::cli {

struct Column {
  std::string name;
  std::string unit;
};

/// Column-labelled numeric rows plus optional scalar metadata.
struct CurveTable {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata = nlohmann::json::object();

  void add_row(std::vector<double> row);
  std::size_t column_index(const std::string& name) const;
};

/// 17 significant digits, independent of the locale, so the value reads back
/// exactly.
std::string format_number(double v);

void write_csv(std::ostream& os, const CurveTable& table);
void write_json(std::ostream& os, const CurveTable& table, const nlohmann::json& config);

}  // namespace wavepkt::cli
