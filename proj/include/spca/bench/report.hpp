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

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace spca::bench {

using Cell = std::variant<std::string, double, long long>;

/// A CSV table. Doubles are written with 17 significant digits, so a
/// reader recovers them exactly.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  std::string to_csv() const;
};

std::string format_cell(const Cell& cell);

/// Writes the table as CSV with LF line endings. Throws ArgumentError for
/// an empty table (no file is created) or a row of the wrong width, and
/// DataError when the path cannot be written.
void emit_report(const Table& table, const std::string& path);

/// Reads a CSV written by emit_report back as strings.
Table read_report(const std::string& path);

}  // namespace spca::bench
