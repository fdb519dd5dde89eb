// Copyright (c) 2026 gridpop contributors.
// All rights reserved.
//
// This software is licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0.
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small text helpers shared by the readers and writers. Not installed.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gridpop {

std::vector<std::string_view> split_whitespace(std::string_view line);

bool iequals(std::string_view a, std::string_view b);

/// Whole-token decimal parse; rejects trailing garbage. Accepts a leading '+'.
std::optional<double> parse_double(std::string_view token);

/// Shortest decimal string that reads back to the same double.
std::string format_shortest(double v);

/// printf-style %.<digits>g, locale independent.
std::string format_significant(double v, int digits);

/// printf-style %.<decimals>f, locale independent.
std::string format_fixed(double v, int decimals);

std::string read_file(const std::string& path);

/// Writes via a temporary sibling and renames, so a failed write leaves no
/// partial file behind.
void write_file(const std::string& path, std::string_view contents);

}
