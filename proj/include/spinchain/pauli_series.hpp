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
#include <unordered_map>
#include <utility>
#include <vector>

#include "spinchain/chain.hpp"
#include "spinchain/operator.hpp"

namespace spinchain {

/// Hermitian Pauli string i^{|x&z|} X^x Z^z; site k maps to bit N-k.
struct PauliString {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  friend bool operator==(const PauliString&, const PauliString&) = default;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    std::uint64_t h = p.x * 0x9E3779B97F4A7C15ull;
    h ^= p.z + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// Single-site factors (site, axis) with axis in {x, y, z}.
PauliString pauli_string(int n_spins, std::initializer_list<std::pair<int, Axis>> factors);

class PauliSum {
 public:
  using Terms = std::unordered_map<PauliString, Complex, PauliStringHash>;

  explicit PauliSum(int n_spins);

  int n_spins() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const Terms& terms() const noexcept { return terms_; }
  void add(const PauliString& p, Complex c);
  Complex coefficient(const PauliString& p) const;
  /// Drops terms with |c| < tol.
  void prune(double tol);
  double max_abs() const;

 private:
  int n_;
  Terms terms_;
};

/// [a, b].
PauliSum commutator(const PauliSum& a, const PauliSum& b);
PauliSum collective_pauli_sum(Axis axis, int n_spins);
/// Dipolar Hamiltonian divided by `scale`.
PauliSum dipolar_pauli_sum(const CouplingMatrix& c, double scale = 1.0);
/// Dense matrix of a Pauli sum (requires the dense cap).
Operator to_dense(const PauliSum& p);

inline constexpr double kSeriesPruneTolerance = 1e-14;

/// Truncated series of exp(-iHt) (sum sigma_x) exp(iHt) projected on sigma_x^k.
/// Works in units of b_ref = max |b_ij|; N may exceed the dense cap (N <= 64).
class SxSeries {
 public:
  SxSeries(const CouplingMatrix& c, int order = 8);

  int n_spins() const noexcept { return n_; }
  int order() const noexcept { return order_; }
  double reference() const noexcept { return b_ref_; }

  std::vector<double> coefficients(double t) const;
  std::vector<double> coefficients_tau(double tau) const;
  /// Largest |c_k| contribution of the highest nonvanishing retained order at tau.
  double last_term_tau(double tau) const;
  /// Same for the next lower nonvanishing order.
  double previous_term_tau(double tau) const;
  /// The retained terms are still shrinking: last_term_tau < previous_term_tau.
  bool within_radius_tau(double tau) const;
  /// taylor()[m][k] multiplies tau^m in c_{k+1}.
  const std::vector<std::vector<double>>& taylor() const noexcept { return taylor_; }
  /// Largest |imaginary part| seen while projecting; zero up to rounding.
  double imaginary_residual() const noexcept { return imag_residual_; }

 private:
  int n_;
  int order_;
  double b_ref_;
  std::vector<std::vector<double>> taylor_;
  double imag_residual_ = 0.0;
};

std::vector<double> sx_series(const CouplingMatrix& c, double t, int order = 8);

}  // namespace spinchain
