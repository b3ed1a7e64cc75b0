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
#include <vector>

#include "spinchain/operator.hpp"

namespace spinchain {

/// Initial state of the MQC experiment: collective sigma_z or sigma_z^1 + sigma_z^N.
enum class InitialState { Thermal, Ends };

InitialState parse_initial_state(std::string_view name);
std::string_view initial_state_name(InitialState s);

/// Modes kappa_k = pi k / (N+1), k = 1..N, of the uniform nearest-neighbor chain.
class FermionSpectrum {
 public:
  FermionSpectrum(int n_spins, double b);

  int n_spins() const noexcept { return n_; }
  double coupling() const noexcept { return b_; }
  /// 1-based mode index.
  double kappa(int k) const { return kappa_.at(k - 1); }
  /// Exactly antisymmetric under k -> N+1-k; exactly zero for the middle mode of odd N.
  double cos_kappa(int k) const { return cos_.at(k - 1); }
  double sin_kappa(int k) const { return sin_.at(k - 1); }
  /// psi_k(t) = 2 b t cos kappa_k.
  double eigenphase(int k, double t) const { return 2.0 * b_ * t * cos_kappa(k); }

 private:
  int n_;
  double b_;
  std::vector<double> kappa_, cos_, sin_;
};

FermionSpectrum fermion_spectrum(int n_spins, double b);

/// Zero-quantum intensity and the single double-quantum intensity J2 = J_{+2} = J_{-2}.
struct ZeroDouble {
  double j0;
  double j2;
};

ZeroDouble mqc_thermal(int n_spins, double b, double t);
ZeroDouble mqc_ends(int n_spins, double b, double t);
ZeroDouble mqc_analytic(InitialState state, int n_spins, double b, double t);

/// Mean of J2 over samples uniformly spread in (0, t_max].
double time_averaged_j2(InitialState state, int n_spins, double b, double t_max, int samples);

/// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

struct FermionPair {
  Matrix annihilate;
  Matrix create;
};

/// c_j = -(prod_{k<j} sigma_z^k) sigma_+^j; the occupied state of a site is |1>.
FermionPair jw_fermion(int j, int n_spins);

/// -b sum_j (c^dag_{j+1} c^dag_j + c_j c_{j+1}) from JW matrices.
Operator dq_fermion_form(int n_spins, double b);

struct IdentityCheck {
  std::string name;
  double max_residual;
  double threshold;
  bool passed() const { return max_residual < threshold; }
};

struct IdentityReport {
  int n_spins;
  std::vector<IdentityCheck> checks;
  /// tr(a^dag_k a_k) for k = 1..N.
  std::vector<double> pair_traces;
  bool passed() const;
  /// First failing check name, empty when all pass.
  std::string first_failure() const;
};

struct IdentityOptions {
  /// Test mode: gamma_k = -1 for k > 0 in the Bogoliubov combination.
  bool flip_gamma = false;
};

/// Trig orthogonality residuals (a) and (b) for modes k, h in +-1..+-N; no dense matrices.
IdentityCheck trig_orthogonality_check(int n_spins);
IdentityCheck trig_sin_cos_check(int n_spins);

/// Evaluates every appendix identity on dense matrices; 2 <= N <= 8.
IdentityReport identity_residuals(int n_spins, const IdentityOptions& options = {});

}  // namespace spinchain
