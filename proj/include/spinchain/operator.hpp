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

#include <complex>
#include <cstdint>
#include <map>
#include <string_view>

#include <Eigen/Dense>

namespace spinchain {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class Axis { X, Y, Z, Plus, Minus };

/// Accepts "x", "y", "z", "+", "-" (also "plus"/"minus").
Axis parse_axis(std::string_view name);
std::string_view axis_name(Axis axis);

inline constexpr int kDefaultDenseCap = 14;

/// Largest N for dense storage. Reads SPINCHAIN_DENSE_CAP once, defaults to 14.
int dense_cap();
/// Throws CapacityError when n_spins exceeds dense_cap(), UsageError when n_spins < 1.
void require_dense(int n_spins);

/// Bit mask of a 1-based site; site 1 is the most significant bit.
std::uint64_t site_mask(int site, int n_spins);
/// Eigenvalue of the collective sigma_z on a basis state.
int magnetization(std::uint64_t state, int n_spins);
/// Coherence order of the basis element |row><col|, (m_row - m_col)/2.
int coherence_order(std::uint64_t row, std::uint64_t col);

/// Dense operator on n_spins spin-1/2 sites.
class Operator {
 public:
  Operator() = default;
  Operator(int n_spins, Matrix matrix);

  static Operator zero(int n_spins);
  static Operator identity(int n_spins);

  int n_spins() const noexcept { return n_spins_; }
  Eigen::Index dim() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }

  Operator adjoint() const;
  Complex trace() const { return matrix_.trace(); }
  /// max |A - A^dag| over entries.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }
  double max_abs() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex s);

 private:
  int n_spins_ = 0;
  Matrix matrix_;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(Complex s, Operator a);
Operator operator*(double s, Operator a);

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// Single-site Pauli embedding. Eigenvalues +-1 for x, y, z; sigma+- = (sigma_x +- i sigma_y)/2.
Operator pauli_site(Axis axis, int site, int n_spins);
/// Sum of pauli_site over all sites.
Operator collective(Axis axis, int n_spins);
/// exp(-i phi Sz_total / 2) with Sz_total the collective sigma_z.
Operator z_rotation(double phi, int n_spins);
/// R_phi A R_phi^dag computed element-wise: order-n entries pick up exp(-i n phi).
Operator z_conjugate(const Operator& a, double phi);
/// U A U^dag for U = exp(-i angle (cos(phase) Sx + sin(phase) Sy) / 2), applied site by site.
Operator transverse_rotation(const Operator& a, double phase, double angle);

class CoherenceComponents {
 public:
  CoherenceComponents(int n_spins, std::map<int, Matrix> components);

  int n_spins() const noexcept { return n_spins_; }
  /// Orders whose block has at least one nonzero entry.
  const std::map<int, Matrix>& components() const noexcept { return components_; }
  /// Block of order n; a zero matrix if the order is absent.
  Matrix component(int order) const;
  Operator reconstruct() const;

 private:
  int n_spins_;
  std::map<int, Matrix> components_;
};

CoherenceComponents coherence_decompose(const Operator& op);

/// tr(a^dag b).
Complex hs_inner(const Operator& a, const Operator& b);
double hs_norm(const Operator& a);
/// Re tr(a^dag b) / sqrt(tr(a^dag a) tr(b^dag b)).
double correlation(const Operator& a, const Operator& b);

}  // namespace spinchain
