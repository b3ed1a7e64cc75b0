// Copyright 2026 The spinchain Authors
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

#include <iosfwd>
#include <string>
#include <vector>

#include "spinchain/exact.hpp"

namespace spinchain {

struct CsvTable {
  std::vector<std::string> leading_comments;  // without the '#'
  std::vector<std::string> header;
  int header_line = 0;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> trailing_comments;
};

/// 12 significant digits.
std::string format_number(double v);
std::string to_csv(const CsvTable& t);
/// Comment lines start with '#'; the first other line is the header; every row must match it.
CsvTable read_csv(std::istream& in, const std::string& source);

/// Header "t_us,J0,J2" with optional J2 and optional trailing "w"; times in microseconds.
MqcCurve read_mqc_csv(std::istream& in, const std::string& source);
MqcCurve read_mqc_csv_file(const std::string& path);
CsvTable mqc_table(const MqcCurve& curve);

/// Writes to a temporary file beside `path` and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace spinchain
