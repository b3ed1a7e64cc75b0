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
#include "spinchain/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>

#include <fftw3.h>

#include "spinchain/error.hpp"

namespace spinchain {

namespace {

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

}  // namespace

Spectrum spectrum(const std::vector<double>& signal, double dt, const SpectrumOptions& options) {
  if (signal.empty()) throw UsageError("spectrum: empty signal");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw UsageError("spectrum: dt must be positive");
  if (options.zero_fill < 1) throw UsageError("spectrum: zero_fill must be >= 1");
  if (options.apodization_rate < 0.0) throw UsageError("spectrum: apodization rate must be >= 0");

  const auto len = static_cast<long>(signal.size());
  const long n = options.zero_fill * (2 * len - 1) + (options.zero_fill % 2 == 0 ? 1 : 0);
  const long half = (n - 1) / 2;
  std::unique_ptr<fftw_complex, FftwDeleter> in(fftw_alloc_complex(static_cast<std::size_t>(n)));
  std::unique_ptr<fftw_complex, FftwDeleter> out(fftw_alloc_complex(static_cast<std::size_t>(n)));
  if (!in || !out) throw NumericError("spectrum: allocation failed");
  for (long j = 0; j < n; ++j) {
    in.get()[j][0] = 0.0;
    in.get()[j][1] = 0.0;
  }
  for (long k = 0; k < len; ++k) {
    const double w = std::exp(-options.apodization_rate * k * dt);
    const double v = signal[k] * w;
    in.get()[k][0] = v;
    if (k > 0) in.get()[n - k][0] = v;
  }
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  if (plan == nullptr) throw NumericError("spectrum: FFTW plan failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  Spectrum s;
  s.frequencies.resize(static_cast<std::size_t>(n));
  s.amplitudes.resize(static_cast<std::size_t>(n));
  const double df = 1.0 / (static_cast<double>(n) * dt);
  for (long k = -half; k <= half; ++k) {
    const long src = (k + n) % n;
    s.frequencies[k + half] = k * df;
    s.amplitudes[k + half] = out.get()[src][0] * dt;
  }
  return s;
}

double half_max_width(const Spectrum& s) {
  if (s.amplitudes.size() < 3) throw UsageError("half_max_width: spectrum too short");
  const auto peak = std::max_element(s.amplitudes.begin(), s.amplitudes.end());
  const double level = 0.5 * *peak;
  if (!(level > 0.0)) throw NumericError("half_max_width: spectrum has no positive maximum");
  std::size_t lo = 0;
  while (s.amplitudes[lo] < level) ++lo;
  std::size_t hi = s.amplitudes.size() - 1;
  while (s.amplitudes[hi] < level) --hi;
  auto cross = [&](std::size_t inside, std::size_t outside) {
    const double a = s.amplitudes[inside];
    const double b = s.amplitudes[outside];
    const double f = (a - level) / (a - b);
    return s.frequencies[inside] + f * (s.frequencies[outside] - s.frequencies[inside]);
  };
  const double f_lo = lo > 0 ? cross(lo, lo - 1) : s.frequencies[lo];
  const double f_hi = hi + 1 < s.amplitudes.size() ? cross(hi, hi + 1) : s.frequencies[hi];
  return f_hi - f_lo;
}

std::vector<double> peak_frequencies(const Spectrum& s, double rel_threshold) {
  std::vector<double> out;
  if (s.amplitudes.size() < 3) return out;
  const double level = rel_threshold * *std::max_element(s.amplitudes.begin(), s.amplitudes.end());
  for (std::size_t k = 1; k + 1 < s.amplitudes.size(); ++k) {
    const double a = s.amplitudes[k];
    if (a >= level && a > s.amplitudes[k - 1] && a >= s.amplitudes[k + 1]) out.push_back(s.frequencies[k]);
  }
  return out;
}

}  // namespace spinchain
