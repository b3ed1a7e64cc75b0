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

#include <string>

#include "spinchain/chain.hpp"
#include "spinchain/config.hpp"
#include "spinchain/fit.hpp"

namespace spinchain {

/// Couplings implied by a config: uniform nearest-neighbor or full fluorapatite geometry.
CouplingMatrix config_couplings(const RunConfig& cfg, double b);

/// Each command writes its CSV to cfg.output when set and returns a printable report;
/// without an output path the CSV is part of the report.
std::string run_mqc(const RunConfig& cfg);
std::string run_prep(const RunConfig& cfg);
std::string run_fid(const RunConfig& cfg);
std::string run_synth(const RunConfig& cfg);

struct VerifyReport {
  bool passed = false;
  std::string failed_check;  // "name (N=...)" of the first failure
  std::string table;
};

VerifyReport run_verify(bool inject_gamma_flip);

struct FitRequest {
  std::string data_path;
  FitOptions options;
  std::string landscape_path;
};

std::string run_fit(const FitRequest& req);

}  // namespace spinchain
