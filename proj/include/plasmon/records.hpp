#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace plasmon {

using Cell = std::variant<double, std::string>;

/// Column-named rows that serialise to CSV (header line + rows) or to a JSON
/// array of objects keyed by the same column names.
struct RecordTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

enum class OutputFormat { csv, json };

void write_csv(std::ostream& out, const RecordTable& table);
void write_json(std::ostream& out, const RecordTable& table);
void write_records(std::ostream& out, const RecordTable& table, OutputFormat format);

}  // namespace plasmon
