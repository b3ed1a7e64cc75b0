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
#include "spinchain/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "spinchain/error.hpp"
#include "spinchain/minimize.hpp"

namespace spinchain {

namespace {

bool has_j2(const MqcCurve& data) {
  return std::all_of(data.intensities.begin(), data.intensities.end(),
                     [](const MqcSlice& s) { return s.count(2) != 0; });
}

void check_data(const MqcCurve& data) {
  data.validate();
  if (data.times.size() < 5) {
    throw UsageError("fit: need at least 5 time points, got " + std::to_string(data.times.size()));
  }
  if (!data.normalized) throw UsageError("fit: data must be normalized");
  const bool j2 = has_j2(data);
  for (std::size_t i = 0; i < data.times.size(); ++i) {
    const double j0 = data.value(i, 0);
    if (!std::isfinite(j0)) throw UsageError("fit: non-finite J0 at row " + std::to_string(i + 1));
    if (j2) {
      double total = 0.0;
      for (const auto& [order, v] : data.intensities[i]) total += v;
      if (std::abs(total - 1.0) > 1e-6) {
        throw UsageError("fit: data not normalized at row " + std::to_string(i + 1) + " (sum " +
                         std::to_string(total) + ")");
      }
    } else if (j0 < -1e-6 || j0 > 1.0 + 1e-6) {
      throw UsageError("fit: J0 outside [0, 1] at row " + std::to_string(i + 1));
    }
  }
  double lo0 = data.value(0, 0), hi0 = lo0, lo2 = data.value(0, 2), hi2 = lo2;
  for (std::size_t i = 1; i < data.times.size(); ++i) {
    lo0 = std::min(lo0, data.value(i, 0));
    hi0 = std::max(hi0, data.value(i, 0));
    lo2 = std::min(lo2, data.value(i, 2));
    hi2 = std::max(hi2, data.value(i, 2));
  }
  if (hi0 - lo0 < 1e-12 && hi2 - lo2 < 1e-12) throw NumericError("fit: degenerate (constant) data");
}

}  // namespace

double fit_residual(const MqcCurve& data, InitialState model, int n_spins, double b, bool use_j2) {
  double acc = 0.0;
  for (std::size_t i = 0; i < data.times.size(); ++i) {
    const ZeroDouble m = mqc_analytic(model, n_spins, b, data.times[i]);
    const double w = data.weights.empty() ? 1.0 : data.weights[i];
    const double d0 = data.value(i, 0) - m.j0;
    double r = d0 * d0;
    if (use_j2) {
      const double d2 = data.value(i, 2) - m.j2;
      r += d2 * d2;
    }
    acc += w * r;
  }
  return acc;
}

FitResult fit(const MqcCurve& data, const FitOptions& o) {
  if (o.n_min < 2 || o.n_max > 200 || o.n_min > o.n_max) {
    throw UsageError("fit: N range must satisfy 2 <= n_min <= n_max <= 200");
  }
  if (!(o.b_min > 0.0) || !(o.b_max > o.b_min) || !std::isfinite(o.b_max)) {
    throw UsageError("fit: b range must satisfy 0 < b_min < b_max");
  }
  if (o.grid_points < 3) throw UsageError("fit: grid_points must be >= 3");
  if (!(o.rel_tolerance > 0.0)) throw UsageError("fit: rel_tolerance must be positive");
  check_data(data);

  FitResult out;
  out.model = o.model;
  out.used_j2 = has_j2(data);
  out.points = data.times.size();
  out.residual = std::numeric_limits<double>::infinity();
  const double log_lo = std::log(o.b_min), log_hi = std::log(o.b_max);
  std::vector<double> grid(static_cast<std::size_t>(o.grid_points));
  for (int g = 0; g < o.grid_points; ++g) {
    grid[g] = std::exp(log_lo + (log_hi - log_lo) * g / (o.grid_points - 1));
  }
  for (int n = o.n_min; n <= o.n_max; ++n) {
    auto f = [&](double b) { return fit_residual(data, o.model, n, b, out.used_j2); };
    std::size_t best_g = 0;
    double best_f = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double v = f(grid[g]);
      if (v < best_f) {
        best_f = v;
        best_g = g;
      }
    }
    const double lo = grid[best_g == 0 ? 0 : best_g - 1];
    const double hi = grid[std::min(best_g + 1, grid.size() - 1)];
    const ScalarMinimum m = golden_section(f, lo, hi, o.rel_tolerance * grid[best_g]);
    double b_star = grid[best_g], r_star = best_f;
    if (m.f < r_star) {
      b_star = m.x;
      r_star = m.f;
    }
    out.per_n[n] = {b_star, r_star};
    if (r_star < out.residual) {
      out.residual = r_star;
      out.n_best = n;
      out.b_best = b_star;
    }
  }
  return out;
}

MqcCurve synth_curve(InitialState model, int n_spins, double b, const std::vector<double>& times,
                     double noise_sd, std::uint64_t seed) {
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw UsageError("synth_curve: noise_sd must be >= 0");
  if (times.empty()) throw UsageError("synth_curve: empty time grid");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  MqcCurve out;
  out.times = times;
  for (double t : times) {
    ZeroDouble z = mqc_analytic(model, n_spins, b, t);
    double j0 = z.j0, j2 = z.j2;
    if (noise_sd > 0.0) {
      j0 += noise_sd * noise(rng);
      j2 += noise_sd * noise(rng);
      const double total = j0 + 2.0 * j2;
      if (!(total > 0.0)) throw NumericError("synth_curve: noise produced a nonpositive total");
      j0 /= total;
      j2 /= total;
    }
    out.intensities.push_back({{-2, j2}, {0, j0}, {2, j2}});
  }
  out.normalized = true;
  out.validate();
  return out;
}

}  // namespace spinchain
