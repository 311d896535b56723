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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spca::csv {

/// Splits one line on `sep`. Surrounding blanks of each field are trimmed.
std::vector<std::string_view> split(std::string_view line, char sep = ',');

/// Parses a whole field as a double; nullopt on any leftover characters.
std::optional<double> parse_double(std::string_view field);
std::optional<long long> parse_integer(std::string_view field);

/// 17 significant digits; reads back to the identical double.
std::string format_double(double value);

/// Strips a trailing '\r' and a leading UTF-8 byte order mark.
std::string_view clean_line(std::string_view line, bool first_line);

}  // namespace spca::csv
