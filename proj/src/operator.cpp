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
#include "spinchain/operator.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "spinchain/error.hpp"

namespace spinchain {

namespace {

constexpr int kDenseCapCeiling = 20;

void require_same_shape(const Operator& a, const Operator& b, const char* what) {
  if (a.n_spins() != b.n_spins() || a.dim() != b.dim()) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a.n_spins()) +
                     " vs " + std::to_string(b.n_spins()) + " spins)");
  }
}

}  // namespace

Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::X;
  if (name == "y") return Axis::Y;
  if (name == "z") return Axis::Z;
  if (name == "+" || name == "plus") return Axis::Plus;
  if (name == "-" || name == "minus") return Axis::Minus;
  throw UsageError("unknown axis '" + std::string(name) + "'");
}

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
    case Axis::Plus: return "+";
    case Axis::Minus: return "-";
  }
  return "?";
}

int dense_cap() {
  const char* env = std::getenv("SPINCHAIN_DENSE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultDenseCap;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > kDenseCapCeiling) {
    throw UsageError("SPINCHAIN_DENSE_CAP must be an integer in [1, " +
                     std::to_string(kDenseCapCeiling) + "], got '" + env + "'");
  }
  return static_cast<int>(v);
}

void require_dense(int n_spins) {
  if (n_spins < 1) throw UsageError("n_spins must be >= 1, got " + std::to_string(n_spins));
  const int cap = dense_cap();
  if (n_spins > cap) {
    throw CapacityError("n_spins=" + std::to_string(n_spins) + " exceeds the dense cap of " +
                        std::to_string(cap) + " (set SPINCHAIN_DENSE_CAP to change it)");
  }
}

std::uint64_t site_mask(int site, int n_spins) {
  if (site < 1 || site > n_spins) {
    throw UsageError("site " + std::to_string(site) + " out of range 1.." + std::to_string(n_spins));
  }
  return std::uint64_t{1} << (n_spins - site);
}

int magnetization(std::uint64_t state, int n_spins) {
  return n_spins - 2 * std::popcount(state);
}

int coherence_order(std::uint64_t row, std::uint64_t col) {
  return std::popcount(col) - std::popcount(row);
}

Operator::Operator(int n_spins, Matrix matrix) : n_spins_(n_spins), matrix_(std::move(matrix)) {
  require_dense(n_spins);
  const Eigen::Index d = Eigen::Index{1} << n_spins;
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw UsageError("operator on " + std::to_string(n_spins) + " spins needs a " +
                     std::to_string(d) + "x" + std::to_string(d) + " matrix");
  }
}

Operator Operator::zero(int n_spins) {
  require_dense(n_spins);
  const Eigen::Index d = Eigen::Index{1} << n_spins;
  return Operator(n_spins, Matrix::Zero(d, d));
}

Operator Operator::identity(int n_spins) {
  require_dense(n_spins);
  const Eigen::Index d = Eigen::Index{1} << n_spins;
  return Operator(n_spins, Matrix::Identity(d, d));
}

Operator Operator::adjoint() const { return Operator(n_spins_, matrix_.adjoint()); }

double Operator::hermiticity_defect() const {
  if (matrix_.size() == 0) return 0.0;
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double Operator::max_abs() const {
  if (matrix_.size() == 0) return 0.0;
  return matrix_.cwiseAbs().maxCoeff();
}

Operator& Operator::operator+=(const Operator& other) {
  require_same_shape(*this, other, "operator+");
  matrix_ += other.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_shape(*this, other, "operator-");
  matrix_ -= other.matrix_;
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  matrix_ *= s;
  return *this;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }

Operator operator*(const Operator& a, const Operator& b) {
  require_same_shape(a, b, "operator*");
  return Operator(a.n_spins(), a.matrix() * b.matrix());
}

Operator operator*(Complex s, Operator a) { return a *= s; }
Operator operator*(double s, Operator a) { return a *= Complex(s, 0.0); }

Operator commutator(const Operator& a, const Operator& b) {
  require_same_shape(a, b, "commutator");
  return Operator(a.n_spins(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_shape(a, b, "anticommutator");
  return Operator(a.n_spins(), a.matrix() * b.matrix() + b.matrix() * a.matrix());
}

Operator pauli_site(Axis axis, int site, int n_spins) {
  require_dense(n_spins);
  const std::uint64_t m = site_mask(site, n_spins);
  const std::uint64_t d = std::uint64_t{1} << n_spins;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const Complex i(0.0, 1.0);
  for (std::uint64_t r = 0; r < d; ++r) {
    const bool up = (r & m) == 0;
    const auto col = static_cast<Eigen::Index>(r);
    const auto flip = static_cast<Eigen::Index>(r ^ m);
    switch (axis) {
      case Axis::Z: out(col, col) = up ? 1.0 : -1.0; break;
      case Axis::X: out(flip, col) = 1.0; break;
      case Axis::Y: out(flip, col) = up ? i : -i; break;
      case Axis::Plus:
        if (!up) out(flip, col) = 1.0;
        break;
      case Axis::Minus:
        if (up) out(flip, col) = 1.0;
        break;
    }
  }
  return Operator(n_spins, std::move(out));
}

Operator collective(Axis axis, int n_spins) {
  require_dense(n_spins);
  Matrix out = Operator::zero(n_spins).matrix();
  const std::uint64_t d = std::uint64_t{1} << n_spins;
  const Complex i(0.0, 1.0);
  for (int site = 1; site <= n_spins; ++site) {
    const std::uint64_t m = site_mask(site, n_spins);
    for (std::uint64_t r = 0; r < d; ++r) {
      const bool up = (r & m) == 0;
      const auto col = static_cast<Eigen::Index>(r);
      const auto flip = static_cast<Eigen::Index>(r ^ m);
      switch (axis) {
        case Axis::Z: out(col, col) += up ? 1.0 : -1.0; break;
        case Axis::X: out(flip, col) += 1.0; break;
        case Axis::Y: out(flip, col) += up ? i : -i; break;
        case Axis::Plus:
          if (!up) out(flip, col) += 1.0;
          break;
        case Axis::Minus:
          if (up) out(flip, col) += 1.0;
          break;
      }
    }
  }
  return Operator(n_spins, std::move(out));
}

Operator z_rotation(double phi, int n_spins) {
  require_dense(n_spins);
  if (!std::isfinite(phi)) throw UsageError("z_rotation: phi must be finite");
  const std::uint64_t d = std::uint64_t{1} << n_spins;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::uint64_t r = 0; r < d; ++r) {
    const double m = magnetization(r, n_spins);
    const auto k = static_cast<Eigen::Index>(r);
    out(k, k) = std::polar(1.0, -0.5 * phi * m);
  }
  return Operator(n_spins, std::move(out));
}

Operator z_conjugate(const Operator& a, double phi) {
  const int n = a.n_spins();
  Matrix out = a.matrix();
  std::vector<Complex> phase(2 * static_cast<std::size_t>(n) + 1);
  for (int order = -n; order <= n; ++order) phase[order + n] = std::polar(1.0, -order * phi);
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const int pc = std::popcount(static_cast<std::uint64_t>(c));
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      const int order = pc - std::popcount(static_cast<std::uint64_t>(r));
      out(r, c) *= phase[order + n];
    }
  }
  return Operator(n, std::move(out));
}

Operator transverse_rotation(const Operator& a, double phase, double angle) {
  const int n = a.n_spins();
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const Complex u00(c, 0.0);
  const Complex u01 = Complex(0.0, -s) * std::polar(1.0, -phase);
  const Complex u10 = Complex(0.0, -s) * std::polar(1.0, phase);
  const Complex u11(c, 0.0);
  Matrix m = a.matrix();
  const Eigen::Index d = m.rows();
  for (int site = 1; site <= n; ++site) {
    const auto mask = static_cast<Eigen::Index>(site_mask(site, n));
    for (Eigen::Index col = 0; col < d; ++col) {
      for (Eigen::Index r0 = 0; r0 < d; ++r0) {
        if (r0 & mask) continue;
        const Eigen::Index r1 = r0 | mask;
        const Complex a0 = m(r0, col);
        const Complex a1 = m(r1, col);
        m(r0, col) = u00 * a0 + u01 * a1;
        m(r1, col) = u10 * a0 + u11 * a1;
      }
    }
    for (Eigen::Index c0 = 0; c0 < d; ++c0) {
      if (c0 & mask) continue;
      const Eigen::Index c1 = c0 | mask;
      for (Eigen::Index row = 0; row < d; ++row) {
        const Complex a0 = m(row, c0);
        const Complex a1 = m(row, c1);
        m(row, c0) = a0 * std::conj(u00) + a1 * std::conj(u01);
        m(row, c1) = a0 * std::conj(u10) + a1 * std::conj(u11);
      }
    }
  }
  return Operator(n, std::move(m));
}

CoherenceComponents::CoherenceComponents(int n_spins, std::map<int, Matrix> components)
    : n_spins_(n_spins), components_(std::move(components)) {
  const Eigen::Index d = Eigen::Index{1} << n_spins;
  for (const auto& [order, block] : components_) {
    if (order < -n_spins || order > n_spins) {
      throw UsageError("coherence order " + std::to_string(order) + " outside [-N, N]");
    }
    if (block.rows() != d || block.cols() != d) throw UsageError("coherence block has wrong size");
  }
}

Matrix CoherenceComponents::component(int order) const {
  auto it = components_.find(order);
  if (it != components_.end()) return it->second;
  const Eigen::Index d = Eigen::Index{1} << n_spins_;
  return Matrix::Zero(d, d);
}

Operator CoherenceComponents::reconstruct() const {
  Operator out = Operator::zero(n_spins_);
  Matrix sum = out.matrix();
  for (const auto& [order, block] : components_) sum += block;
  return Operator(n_spins_, std::move(sum));
}

CoherenceComponents coherence_decompose(const Operator& op) {
  const int n = op.n_spins();
  const Eigen::Index d = op.dim();
  std::map<int, Matrix> parts;
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      const Complex v = op.matrix()(r, c);
      if (v == Complex(0.0, 0.0)) continue;
      const int order = coherence_order(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c));
      auto [it, inserted] = parts.try_emplace(order);
      if (inserted) it->second = Matrix::Zero(d, d);
      it->second(r, c) = v;
    }
  }
  return CoherenceComponents(n, std::move(parts));
}

Complex hs_inner(const Operator& a, const Operator& b) {
  require_same_shape(a, b, "hs_inner");
  return (a.matrix().conjugate().cwiseProduct(b.matrix())).sum();
}

double hs_norm(const Operator& a) { return std::sqrt(a.matrix().squaredNorm()); }

double correlation(const Operator& a, const Operator& b) {
  require_same_shape(a, b, "correlation");
  const double na = a.matrix().squaredNorm();
  const double nb = b.matrix().squaredNorm();
  if (na == 0.0 || nb == 0.0) throw UsageError("correlation: zero-norm operator");
  return hs_inner(a, b).real() / std::sqrt(na * nb);
}

}  // namespace spinchain
