#pragma once

// Flat result tables written as CSV (header row, 17 significant digits) or as
// a JSON array of objects with the same keys and values.

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace heatlevel::cli {

/// An empty optional is an empty CSV cell and a JSON null.
using Cell = std::optional<std::variant<double, long long, bool, std::string>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Appends a row; missing trailing cells are left empty.
  void add(std::vector<Cell> row);
};

std::string format_double(double v);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

}  // namespace heatlevel::cli
