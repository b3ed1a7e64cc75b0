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

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/operator.hpp"

namespace spinchain {

/// Transverse rotation axis (cos phi, sin phi, 0): x = 0, y = pi/2, -x = pi, -y = 3pi/2.
struct PulsePhase {
  double radians = 0.0;
  std::string label;
};

/// "x", "y", "-x", "-y" or a number of degrees.
PulsePhase parse_pulse_phase(std::string_view text);
/// Comma-separated list of phases.
std::vector<PulsePhase> parse_phase_list(std::string_view text);
/// "zq" selects zero_quantum_cycle(n_spins), "xy" the two-step {y, x} cycle, otherwise a phase list.
std::vector<PulsePhase> resolve_phase_cycle(std::string_view text, int n_spins);

/// exp(-i angle S_axis / 2) state exp(i angle S_axis / 2).
Operator hard_pulse(const Operator& state, const PulsePhase& axis, double angle);
Operator hard_pulse(const Operator& state, std::string_view axis, double angle);

/// {y, x}.
std::vector<PulsePhase> two_step_cycle();
/// L = floor(N/2) + 1 phases pi/2 - pi m / L; removes every even nonzero order |n| <= N.
std::vector<PulsePhase> zero_quantum_cycle(int n_spins);

/// sum_{k != 1, N} c_k^2.
double interior_objective(std::span<const double> c);

struct T1Options {
  int order = 8;
  double tau_max = 1.0;
  double tau_step = 0.005;
  double tolerance = 1e-10;
};

struct T1Result {
  double tau1;       // b_ref * t1
  double t1;         // seconds
  double b_ref;      // max |b_ij|
  double objective;  // interior objective at tau1
  bool within_radius = true;
};

/// First local minimum of the interior objective from the commutator series.
T1Result find_t1(const CouplingMatrix& c, const T1Options& options = {});
/// Same search on exact c_k(t).
T1Result find_t1_exact(const CouplingMatrix& c, const T1Options& options = {});

struct PrepOptions {
  /// Simulate every scan instead of deriving scans from the first by a z rotation.
  bool explicit_scans = false;
};

struct PrepResult {
  Operator state;
  double t1 = 0.0;
  std::vector<double> per_site_z;
  double fidelity = 0.0;
  /// Norm of the off-diagonal order-0 part relative to the state norm.
  double zq_residual_norm = 0.0;
  /// ||[state, S_z]|| / ||state||.
  double commutator_residual = 0.0;
};

/// pi/2|a - t1 - pi/2|-a on the collective sigma_z, averaged over the cycle phases a.
PrepResult prep_protocol(const CouplingMatrix& c, double t1, const std::vector<PulsePhase>& cycle,
                         const PrepOptions& options = {});
PrepResult prep_protocol(const CouplingMatrix& c, double t1);

/// Diagnostics of an arbitrary state.
PrepResult describe_prepared(Operator state, double t1);

struct ErrorBreakdown {
  std::vector<double> site_z;     // projection on normalized sigma_z^k, k = 1..N
  std::vector<double> three_spin; // sigma_z^i (s+^{i-1} s-^{i+1} + h.c.), i = 2..N-1
  double remainder = 0.0;
  double norm = 0.0;
  /// Interior site (2..N-1) with the largest |site_z|.
  int largest_interior_site() const;
  /// ("z1", v), ..., ("zzq2", v), ..., ("remainder", v).
  std::vector<std::pair<std::string, double>> named() const;
};

ErrorBreakdown error_breakdown(const Operator& state);
ErrorBreakdown error_breakdown(const PrepResult& r);

}  // namespace spinchain
