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

#include <map>
#include <optional>
#include <vector>

#include "spinchain/operator.hpp"

namespace spinchain {

/// Eigendecomposition of a Hermitian operator, split into the connected blocks of its
/// sparsity pattern (magnetization sectors for the dipolar Hamiltonian, parity classes for H_DQ).
class Propagator {
 public:
  /// Throws UsageError when ||h - h^dag||_max > 1e-9.
  explicit Propagator(const Operator& h);

  /// An operator expressed in the eigenbasis, stored block by block.
  struct Frame {
    std::vector<Matrix> blocks;  // blocks[a * block_count + b], empty when identically zero
  };

  int n_spins() const noexcept { return n_spins_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  Eigen::VectorXd eigenvalues() const;

  Frame to_frame(const Operator& a) const;
  /// exp(-iht) A exp(iht) from a frame.
  Operator from_frame(const Frame& f, double t) const;
  Operator evolve(const Operator& a, double t) const { return from_frame(to_frame(a), t); }

 private:
  struct Block {
    std::vector<Eigen::Index> index;
    Matrix vectors;
    Eigen::VectorXd energies;
  };
  friend class SignalModel;
  int n_spins_;
  std::vector<Block> blocks_;
};

/// f(t) = tr(O^dag exp(-iht) rho exp(iht)) as a sum of oscillating terms.
class SignalModel {
 public:
  SignalModel(const Propagator& p, const Propagator::Frame& state, const Propagator::Frame& observable);
  SignalModel(const Propagator& p, const Operator& state, const Operator& observable);

  Complex value(double t) const;
  std::size_t term_count() const noexcept { return omega_.size(); }

 private:
  std::vector<double> omega_;
  std::vector<Complex> weight_;
};

/// exp(-iht) state exp(iht).
Operator evolve(const Operator& state, const Operator& h, double t);

/// Coherence order -> intensity; every order in [-N, N] is present.
using MqcSlice = std::map<int, double>;

/// Evaluates J_n(t) = tr(rho(t)^(n) O(t)^(-n)) for a fixed H_DQ, initial state and observable.
class MqcEvaluator {
 public:
  MqcEvaluator(const Operator& h_dq, const Operator& rho0, const Operator& observable);

  MqcSlice direct(double t) const;
  /// Phase-encoded signal S(phi_m), phi_m = 2 pi m / M, then a DFT over m.
  /// Returns bins n in (-M/2, M/2]; orders congruent mod M fold together.
  MqcSlice protocol(double t, int n_phases, int max_order = 4) const;
  /// S(phi) = tr[R_phi rho(t) R_phi^dag O(t)].
  double phase_signal(double t, double phi) const;

 private:
  int n_spins_;
  Propagator propagator_;
  Propagator::Frame rho_;
  Propagator::Frame obs_;
};

MqcSlice mqc_direct(const Operator& rho0, const Operator& h_dq, double t, const Operator& observable);
MqcSlice mqc_protocol(const Operator& rho0, const Operator& h_dq, double t, int n_phases,
                      const Operator& observable, int max_order = 4);

struct MqcCurve {
  std::vector<double> times;  // seconds, ascending
  std::vector<MqcSlice> intensities;
  bool normalized = false;
  std::vector<double> weights;  // optional, one per time

  void validate() const;
  /// J_n at time index i; 0 when the order is absent.
  double value(std::size_t i, int order) const;
};

/// Unnormalized J_n(t) on a time grid via mqc_direct.
MqcCurve mqc_curve(const Operator& rho0, const Operator& h_dq, const std::vector<double>& times,
                   const Operator& observable);
/// Divides each slice by its sum; throws NumericError on a nonpositive total.
MqcCurve normalize_curve(const MqcCurve& raw);

struct FidOptions {
  bool readout_pulse = true;          // pi/2 about y applied to rho0 first
  std::optional<Operator> observable;  // defaults to collective x
};

/// s(t_i) = Re tr(O^dag exp(-i h t_i) rho exp(i h t_i)).
std::vector<double> simulate_fid(const Operator& rho0, const Operator& h_dip,
                                 const std::vector<double>& times, const FidOptions& options = {});

/// c_k = tr(sigma_x^k state) / 2^N.
std::vector<double> sx_coefficients(const Operator& state);
/// c_k = tr(sigma_z^k state) / 2^N.
std::vector<double> sz_coefficients(const Operator& state);

}  // namespace spinchain
