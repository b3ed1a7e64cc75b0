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
#include "spinchain/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "spinchain/error.hpp"

namespace spinchain {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const CsvTable& t) {
  std::string out;
  for (const auto& c : t.leading_comments) out += "# " + c + "\n";
  out += join(t.header) + "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += "\n";
  }
  for (const auto& c : t.trailing_comments) out += "# " + c + "\n";
  return out;
}

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable t;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::string text = line.substr(first + 1);
      if (!text.empty() && text.front() == ' ') text.erase(0, 1);
      (have_header ? t.trailing_comments : t.leading_comments).push_back(text);
      continue;
    }
    const std::vector<std::string> cells = split(line);
    if (!have_header) {
      t.header = cells;
      t.header_line = lineno;
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError(source, lineno, "expected " + std::to_string(t.header.size()) + " fields, got " +
                                           std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (c.empty() || used != c.size() || !std::isfinite(v)) {
        throw ParseError(source, lineno, "invalid number '" + c + "'");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw ParseError(source, lineno, "missing header row");
  return t;
}

MqcCurve read_mqc_csv(std::istream& in, const std::string& source) {
  const CsvTable t = read_csv(in, source);
  const std::string h = join(t.header);
  const bool with_j2 = h == "t_us,J0,J2" || h == "t_us,J0,J2,w";
  const bool weighted = h == "t_us,J0,J2,w" || h == "t_us,J0,w";
  if (!with_j2 && h != "t_us,J0" && h != "t_us,J0,w") {
    throw ParseError(source, t.header_line,
                     "header '" + h + "' does not match expected 't_us,J0,J2' (optional ',w'; J2 may be omitted)");
  }
  MqcCurve c;
  for (const auto& row : t.rows) {
    c.times.push_back(row[0] * 1e-6);
    MqcSlice s{{0, row[1]}};
    if (with_j2) {
      s[2] = row[2];
      s[-2] = row[2];
    }
    c.intensities.push_back(std::move(s));
    if (weighted) c.weights.push_back(row.back());
  }
  c.normalized = true;
  c.validate();
  return c;
}

MqcCurve read_mqc_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return read_mqc_csv(in, path);
}

CsvTable mqc_table(const MqcCurve& curve) {
  curve.validate();
  CsvTable t;
  t.header = {"t_us", "J0", "J2"};
  if (!curve.weights.empty()) t.header.push_back("w");
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    std::vector<double> row{curve.times[i] * 1e6, curve.value(i, 0), curve.value(i, 2)};
    if (!curve.weights.empty()) row.push_back(curve.weights[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw UsageError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot rename into '" + path + "': " + ec.message());
  }
}

}  // namespace spinchain
