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
#include "spinchain/chain.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spinchain/error.hpp"

namespace spinchain {

void SiteGeometry::validate() const {
  if (positions.size() < 2) throw UsageError("geometry needs at least 2 sites");
  if (!(field_axis.norm() > 0.0) || !field_axis.allFinite()) {
    throw UsageError("field axis must be a finite nonzero vector");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!positions[i].allFinite()) {
      throw UsageError("site " + std::to_string(i + 1) + " has a non-finite coordinate");
    }
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if ((positions[i] - positions[j]).norm() <= 1e-6) {
        throw UsageError("sites " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " coincide");
      }
    }
  }
}

SiteGeometry fap_chain_geometry(int n_spins, bool include_neighbor_chain) {
  if (n_spins < 2) throw UsageError("fap_chain_geometry: n_spins must be >= 2");
  SiteGeometry g;
  for (int k = 0; k < n_spins; ++k) g.positions.emplace_back(0.0, 0.0, k * kFapInChainSpacing);
  if (include_neighbor_chain) {
    for (int k = 0; k < n_spins; ++k) {
      g.positions.emplace_back(kFapChainSeparation, 0.0, k * kFapInChainSpacing);
    }
  }
  return g;
}

SiteGeometry load_site_list(std::istream& in, const std::string& source, Vec3 field_axis) {
  SiteGeometry g;
  g.field_axis = field_axis;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    Vec3 p;
    if (!(ss >> p.x() >> p.y() >> p.z())) {
      throw ParseError(source, lineno, "expected three coordinates");
    }
    std::string extra;
    if (ss >> extra) throw ParseError(source, lineno, "unexpected token '" + extra + "'");
    g.positions.push_back(p);
  }
  g.validate();
  return g;
}

SiteGeometry load_site_list_file(const std::string& path, Vec3 field_axis) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open site list '" + path + "'");
  return load_site_list(in, path, field_axis);
}

CouplingMatrix::CouplingMatrix(Eigen::MatrixXd b) : b_(std::move(b)) {
  if (b_.rows() != b_.cols()) throw UsageError("coupling matrix must be square");
  if (b_.rows() < 2) throw UsageError("coupling matrix needs at least 2 spins");
  if (!b_.allFinite()) throw UsageError("coupling matrix has non-finite entries");
  const double scale = std::max(1.0, b_.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < b_.rows(); ++i) {
    if (b_(i, i) != 0.0) throw UsageError("coupling matrix diagonal must be zero");
    for (Eigen::Index j = i + 1; j < b_.cols(); ++j) {
      if (std::abs(b_(i, j) - b_(j, i)) > 1e-12 * scale) {
        throw UsageError("coupling matrix must be symmetric");
      }
    }
  }
}

double CouplingMatrix::reference() const { return b_.cwiseAbs().maxCoeff(); }

bool CouplingMatrix::nearest_neighbor_only() const {
  for (Eigen::Index i = 0; i < b_.rows(); ++i) {
    for (Eigen::Index j = i + 2; j < b_.cols(); ++j) {
      if (b_(i, j) != 0.0) return false;
    }
  }
  return true;
}

CouplingMatrix dipolar_couplings(const SiteGeometry& geom, double b_nn, double reference_distance) {
  geom.validate();
  if (!(b_nn > 0.0) || !std::isfinite(b_nn)) throw UsageError("b_nn must be positive and finite");
  if (!(reference_distance > 0.0)) throw UsageError("reference distance must be positive");
  const Vec3 axis = geom.field_axis.normalized();
  const auto n = static_cast<Eigen::Index>(geom.positions.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Vec3 rij = geom.positions[j] - geom.positions[i];
      const double r = rij.norm();
      const double cos_theta = rij.dot(axis) / r;
      const double angular = (1.0 - 3.0 * cos_theta * cos_theta) / -2.0;
      const double v = b_nn * angular * std::pow(reference_distance / r, 3);
      b(i, j) = v;
      b(j, i) = v;
    }
  }
  return CouplingMatrix(std::move(b));
}

CouplingMatrix nn_uniform_couplings(int n_spins, double b) {
  if (n_spins < 2) throw UsageError("nn_uniform_couplings: n_spins must be >= 2");
  if (!std::isfinite(b)) throw UsageError("nn_uniform_couplings: b must be finite");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_spins, n_spins);
  for (int i = 0; i + 1 < n_spins; ++i) {
    m(i, i + 1) = b;
    m(i + 1, i) = b;
  }
  return CouplingMatrix(std::move(m));
}

Operator dipolar_hamiltonian(const CouplingMatrix& c) {
  const int n = c.n_spins();
  require_dense(n);
  const std::uint64_t d = std::uint64_t{1} << n;
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double b = c(i, j);
      if (b == 0.0) continue;
      const std::uint64_t mi = site_mask(i, n);
      const std::uint64_t mj = site_mask(j, n);
      for (std::uint64_t s = 0; s < d; ++s) {
        const bool bi = (s & mi) != 0;
        const bool bj = (s & mj) != 0;
        const auto col = static_cast<Eigen::Index>(s);
        h(col, col) += (bi == bj) ? b : -b;
        if (bi != bj) h(static_cast<Eigen::Index>(s ^ mi ^ mj), col) += -b;
      }
    }
  }
  return Operator(n, std::move(h));
}

Operator dq_hamiltonian(const CouplingMatrix& c) {
  const int n = c.n_spins();
  require_dense(n);
  const std::uint64_t d = std::uint64_t{1} << n;
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double b = c(i, j);
      if (b == 0.0) continue;
      const std::uint64_t mi = site_mask(i, n);
      const std::uint64_t mj = site_mask(j, n);
      for (std::uint64_t s = 0; s < d; ++s) {
        if (((s & mi) != 0) != ((s & mj) != 0)) continue;
        h(static_cast<Eigen::Index>(s ^ mi ^ mj), static_cast<Eigen::Index>(s)) += b;
      }
    }
  }
  return Operator(n, std::move(h));
}

}  // namespace spinchain
