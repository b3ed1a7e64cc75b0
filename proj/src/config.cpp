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
#include "spinchain/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <type_traits>

#include "spinchain/error.hpp"
#include "spinchain/prep.hpp"

namespace spinchain {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  const std::string v = trim(text);
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw UsageError("invalid value '" + v + "' for " + std::string(key));
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) throw UsageError("non-finite value for " + std::string(key));
  }
  return out;
}

std::string format_exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view coupling_model_name(CouplingModel c) {
  return c == CouplingModel::NearestNeighbor ? "nn" : "geometric";
}

std::string_view engine_name(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::Exact: return "exact";
    case Engine::Both: return "both";
  }
  return "?";
}

void RunConfig::validate() const {
  if (n_spins < 2) throw UsageError("n_spins must be >= 2");
  if (b_rad_s && !(*b_rad_s > 0.0)) throw UsageError("b_rad_s must be positive");
  if (!(t_start_us >= 0.0)) throw UsageError("t_start_us must be >= 0");
  if (!(t_stop_us > t_start_us)) throw UsageError("t_stop_us must exceed t_start_us");
  if (t_count < 2) throw UsageError("t_count must be >= 2");
  if (phases < 2) throw UsageError("phases must be >= 2");
  if (t1_us && !(*t1_us >= 0.0)) throw UsageError("t1_us must be >= 0");
  if (order < 0 || order > 12 || order % 2 != 0) throw UsageError("order must be even and <= 12");
  if (!(noise_sd >= 0.0)) throw UsageError("noise_sd must be >= 0");
  if (!(line_broadening_hz >= 0.0)) throw UsageError("line_broadening_hz must be >= 0");
  if (zero_fill < 1) throw UsageError("zero_fill must be >= 1");
  resolve_phase_cycle(phase_cycle, n_spins);
}

std::vector<double> RunConfig::times() const {
  std::vector<double> t(static_cast<std::size_t>(t_count));
  for (int k = 0; k < t_count; ++k) {
    t[k] = 1e-6 * (t_start_us + (t_stop_us - t_start_us) * k / (t_count - 1));
  }
  return t;
}

double RunConfig::b() const {
  if (!b_rad_s) throw UsageError("b_rad_s (or b_hz) is required for this command");
  return *b_rad_s;
}

void apply_setting(RunConfig& cfg, std::string_view key_in, std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "n_spins") cfg.n_spins = parse_number<int>(key, value);
  else if (key == "b_rad_s") cfg.b_rad_s = parse_number<double>(key, value);
  else if (key == "b_hz") cfg.b_rad_s = 2.0 * std::numbers::pi * parse_number<double>(key, value);
  else if (key == "model") cfg.model = parse_initial_state(value);
  else if (key == "t_start_us") cfg.t_start_us = parse_number<double>(key, value);
  else if (key == "t_stop_us") cfg.t_stop_us = parse_number<double>(key, value);
  else if (key == "t_count") cfg.t_count = parse_number<int>(key, value);
  else if (key == "phases") cfg.phases = parse_number<int>(key, value);
  else if (key == "couplings") {
    if (value == "nn") cfg.couplings = CouplingModel::NearestNeighbor;
    else if (value == "geometric") cfg.couplings = CouplingModel::Geometric;
    else throw UsageError("couplings must be nn or geometric, got '" + value + "'");
  } else if (key == "engine") {
    if (value == "analytic") cfg.engine = Engine::Analytic;
    else if (value == "exact") cfg.engine = Engine::Exact;
    else if (value == "both") cfg.engine = Engine::Both;
    else throw UsageError("engine must be analytic, exact or both, got '" + value + "'");
  } else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "output") cfg.output = value;
  else if (key == "t1_us") cfg.t1_us = parse_number<double>(key, value);
  else if (key == "order") cfg.order = parse_number<int>(key, value);
  else if (key == "noise_sd") cfg.noise_sd = parse_number<double>(key, value);
  else if (key == "line_broadening_hz") cfg.line_broadening_hz = parse_number<double>(key, value);
  else if (key == "zero_fill") cfg.zero_fill = parse_number<int>(key, value);
  else if (key == "phase_cycle") {
    if (value.empty()) throw UsageError("phase_cycle must not be empty");
    cfg.phase_cycle = value;
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

void apply_assignment(RunConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw UsageError("expected key=value, got '" + std::string(assignment) + "'");
  }
  apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(source, lineno, "expected key=value");
    std::string key = trim(body.substr(0, eq));
    const std::string canonical_key = key == "b_hz" ? "b_rad_s" : key;
    if (!seen.insert(canonical_key).second) throw ParseError(source, lineno, "duplicate key '" + key + "'");
    try {
      apply_setting(cfg, key, body.substr(eq + 1));
    } catch (const ParseError&) {
      throw;
    } catch (const UsageError& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const UsageError& e) {
    throw UsageError(source + ": " + e.what());
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_config(in, source);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  return parse_config(in, path);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  o << "n_spins=" << c.n_spins << "\n";
  if (c.b_rad_s) o << "b_rad_s=" << format_exact(*c.b_rad_s) << "\n";
  o << "model=" << initial_state_name(c.model) << "\n";
  o << "t_start_us=" << format_exact(c.t_start_us) << "\n";
  o << "t_stop_us=" << format_exact(c.t_stop_us) << "\n";
  o << "t_count=" << c.t_count << "\n";
  o << "phases=" << c.phases << "\n";
  o << "couplings=" << coupling_model_name(c.couplings) << "\n";
  o << "engine=" << engine_name(c.engine) << "\n";
  o << "seed=" << c.seed << "\n";
  if (!c.output.empty()) o << "output=" << c.output << "\n";
  if (c.t1_us) o << "t1_us=" << format_exact(*c.t1_us) << "\n";
  o << "order=" << c.order << "\n";
  o << "noise_sd=" << format_exact(c.noise_sd) << "\n";
  o << "line_broadening_hz=" << format_exact(c.line_broadening_hz) << "\n";
  o << "zero_fill=" << c.zero_fill << "\n";
  o << "phase_cycle=" << c.phase_cycle << "\n";
  return o.str();
}

}  // namespace spinchain
