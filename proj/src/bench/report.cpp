// Copyright 2026 The spca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spca/bench/report.hpp"

#include <fstream>
#include <sstream>

#include "spca/core.hpp"
#include "spca/csv.hpp"

namespace spca::bench {

std::string format_cell(const Cell& cell) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  if (const auto* d = std::get_if<double>(&cell)) return csv::format_double(*d);
  return std::to_string(std::get<long long>(cell));
}

std::string Table::to_csv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
    out << '\n';
  }
  return out.str();
}

void emit_report(const Table& table, const std::string& path) {
  if (table.rows.empty()) throw ArgumentError("emit_report: no result rows to write");
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.header.size()) {
      throw ArgumentError("emit_report: row " + std::to_string(r) + " has " + std::to_string(table.rows[r].size()) +
                          " cells, header has " + std::to_string(table.header.size()));
    }
  }
  const std::string text = table.to_csv();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write report to " + path);
  out << text;
  out.close();
  if (!out) throw DataError("failed writing report to " + path);
}

Table read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  Table table;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = csv::clean_line(raw, line_no == 1);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    for (auto f : csv::split(line)) fields.emplace_back(f);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    std::vector<Cell> row(fields.begin(), fields.end());
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace spca::bench
