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

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinchain/operator.hpp"

namespace spinchain {

using Vec3 = Eigen::Vector3d;

/// In-chain 19F spacing in fluorapatite (angstrom).
inline constexpr double kFapInChainSpacing = 3.442;
/// Distance between adjacent parallel chains (angstrom).
inline constexpr double kFapChainSeparation = 9.367;

struct SiteGeometry {
  std::vector<Vec3> positions;
  Vec3 field_axis = Vec3::UnitZ();

  /// Throws UsageError unless there are >= 2 sites, no coincident pair and a nonzero axis.
  void validate() const;
};

/// Collinear chain along the field axis; optionally one parallel chain offset by D along x.
/// Sites 1..n are the primary chain, n+1..2n the neighbor chain.
SiteGeometry fap_chain_geometry(int n_spins, bool include_neighbor_chain = false);

/// One site per line, three coordinates in angstrom, '#' starts a comment line.
SiteGeometry load_site_list(std::istream& in, const std::string& source = "<sites>",
                            Vec3 field_axis = Vec3::UnitZ());
SiteGeometry load_site_list_file(const std::string& path, Vec3 field_axis = Vec3::UnitZ());

/// Symmetric real coupling matrix b_ij in rad/s with zero diagonal. Site indices are 1-based.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(Eigen::MatrixXd b);

  int n_spins() const noexcept { return static_cast<int>(b_.rows()); }
  double operator()(int i, int j) const { return b_(i - 1, j - 1); }
  const Eigen::MatrixXd& matrix() const noexcept { return b_; }
  /// max_ij |b_ij|; the reference scale for dimensionless times.
  double reference() const;
  /// True when only |i-j| = 1 entries are nonzero.
  bool nearest_neighbor_only() const;

 private:
  Eigen::MatrixXd b_;
};

/// b_ij = b_nn (1 - 3 cos^2 theta)/(-2) (d/r)^3 with d the reference spacing.
CouplingMatrix dipolar_couplings(const SiteGeometry& geom, double b_nn,
                                 double reference_distance = kFapInChainSpacing);
CouplingMatrix nn_uniform_couplings(int n_spins, double b);

/// sum_{i<j} b_ij [Z_i Z_j - (X_i X_j + Y_i Y_j)/2].
Operator dipolar_hamiltonian(const CouplingMatrix& c);
/// sum_{i<j} b_ij (s+_i s+_j + s-_i s-_j).
Operator dq_hamiltonian(const CouplingMatrix& c);

}  // namespace spinchain
