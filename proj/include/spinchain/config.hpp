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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinchain/freefermion.hpp"

namespace spinchain {

enum class CouplingModel { NearestNeighbor, Geometric };
enum class Engine { Analytic, Exact, Both };

struct RunConfig {
  int n_spins = 8;
  std::optional<double> b_rad_s;
  InitialState model = InitialState::Thermal;
  double t_start_us = 0.0;
  double t_stop_us = 354.4;
  int t_count = 51;
  int phases = 16;
  CouplingModel couplings = CouplingModel::NearestNeighbor;
  Engine engine = Engine::Analytic;
  std::uint64_t seed = 1;
  std::string output;
  std::optional<double> t1_us;
  int order = 8;
  double noise_sd = 0.0;
  double line_broadening_hz = 0.0;
  int zero_fill = 4;
  std::string phase_cycle = "zq";

  /// Throws UsageError on any violated invariant.
  void validate() const;
  /// Uniform grid in seconds.
  std::vector<double> times() const;
  /// b_rad_s or a UsageError naming the missing key.
  double b() const;
};

/// Applies one key=value pair; b_hz is accepted and stored as b_rad_s.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
/// "key=value" form.
void apply_assignment(RunConfig& cfg, std::string_view assignment);

RunConfig parse_config(std::istream& in, const std::string& source);
RunConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);
/// One key=value per line in a fixed key order; unset optional keys are omitted.
std::string serialize_config(const RunConfig& cfg);

std::string_view coupling_model_name(CouplingModel c);
std::string_view engine_name(Engine e);

}  // namespace spinchain
