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

#include <cmath>
#include <utility>

namespace spinchain {

struct ScalarMinimum {
  double x;
  double f;
  int evaluations;
};

/// Golden-section search on [lo, hi] until the bracket is narrower than `width`.
/// Returns the best point evaluated, so a smaller width never gives a larger f.
template <class F>
ScalarMinimum golden_section(F&& f, double lo, double hi, double width, int max_iter = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  ScalarMinimum best = fc <= fd ? ScalarMinimum{c, fc, 2} : ScalarMinimum{d, fd, 2};
  for (int it = 0; it < max_iter && (b - a) > width; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc < best.f) best = {c, fc, best.evaluations};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd < best.f) best = {d, fd, best.evaluations};
    }
    ++best.evaluations;
  }
  return best;
}

}  // namespace spinchain
