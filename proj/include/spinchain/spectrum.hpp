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

#include <vector>

namespace spinchain {

struct Spectrum {
  std::vector<double> frequencies;  // Hz, symmetric about 0
  std::vector<double> amplitudes;
};

struct SpectrumOptions {
  int zero_fill = 4;
  double apodization_rate = 0.0;  // exp(-rate |t|), 1/s; 0 disables
};

/// DFT of the two-sided extension s(-t) = conj(s(t)) of a real signal sampled at t = k dt, k >= 0.
Spectrum spectrum(const std::vector<double>& signal, double dt, const SpectrumOptions& options = {});

/// Distance between the outermost frequencies where the amplitude reaches half of its maximum,
/// linearly interpolated at the crossings.
double half_max_width(const Spectrum& s);

/// Frequencies of local maxima at or above rel_threshold * max amplitude, ascending.
std::vector<double> peak_frequencies(const Spectrum& s, double rel_threshold = 0.1);

}  // namespace spinchain
