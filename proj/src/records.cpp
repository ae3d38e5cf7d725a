#include "plasmon/records.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include "plasmon/error.hpp"

namespace plasmon {

void RecordTable::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ValidationError(fmt::format("record has {} cells, table has {} columns", row.size(), columns.size()));
  }
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const RecordTable& table) {
  out << fmt::format("{}\n", fmt::join(table.columns, ","));
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      // shortest representation that round-trips
      std::visit([&](const auto& v) { out << fmt::format("{}", v); }, row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const RecordTable& table) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { rec[table.columns[i]] = v; }, row[i]);
    }
    records.push_back(std::move(rec));
  }
  out << records.dump(2) << '\n';
}

void write_records(std::ostream& out, const RecordTable& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    write_csv(out, table);
  } else {
    write_json(out, table);
  }
}

}  // namespace plasmon
