#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace casimir::app {

using Cell = std::variant<double, long, std::string, bool>;

/// Rows of named columns. Column names carry their unit, e.g. "force_per_area[N/m^2]".
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Comma-separated, header row, '.' decimal, doubles in %.16e.
void write_csv(std::ostream& out, const Table& table);

/// Array of {column: value} objects.
nlohmann::json table_json(const Table& table);

/// {command, config, results} document.
nlohmann::json report_json(const std::string& command, const nlohmann::json& config,
                           const Table& table);

std::string format_double(double v);

}  // namespace casimir::app
