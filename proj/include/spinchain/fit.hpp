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
#include <map>
#include <utility>
#include <vector>

#include "spinchain/exact.hpp"
#include "spinchain/freefermion.hpp"

namespace spinchain {

struct FitOptions {
  InitialState model = InitialState::Thermal;
  int n_min = 2;
  int n_max = 30;
  double b_min = 1e3;  // rad/s
  double b_max = 1e5;
  int grid_points = 200;
  double rel_tolerance = 1e-6;
};

struct FitResult {
  int n_best = 0;
  double b_best = 0.0;
  double residual = 0.0;
  std::map<int, std::pair<double, double>> per_n;  // N -> (b*, residual)
  InitialState model = InitialState::Thermal;
  bool used_j2 = false;
  std::size_t points = 0;
};

/// Weighted sum of squared deviations of J0 (and J2 when present) from the analytic model.
double fit_residual(const MqcCurve& data, InitialState model, int n_spins, double b, bool use_j2);

/// Exhaustive scan over N, log-grid bracket plus golden section over b for each N.
FitResult fit(const MqcCurve& data, const FitOptions& options);

/// Analytic (J0, J2) curve plus i.i.d. Gaussian noise of standard deviation noise_sd on each,
/// renormalized so that J0 + 2 J2 = 1. Slices hold orders 0, +2 and -2.
MqcCurve synth_curve(InitialState model, int n_spins, double b, const std::vector<double>& times,
                     double noise_sd, std::uint64_t seed);

}  // namespace spinchain
