// Copyright 2026 The cqfi Authors
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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace cqfi {

struct MeanWithError {
  double mean = 0.0;
  double sem = 0.0;  // NaN when fewer than two samples
  std::size_t count = 0;
};

/// Power sums; merging is plain addition so reductions in a fixed order are
/// bitwise reproducible.
struct MomentSums {
  double n = 0.0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) noexcept {
    n += 1.0;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const MomentSums& o) noexcept {
    n += o.n;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const noexcept { return n > 0.0 ? sum / n : std::numeric_limits<double>::quiet_NaN(); }
  /// Unbiased sample variance.
  double variance() const noexcept {
    if (n < 2.0) return std::numeric_limits<double>::quiet_NaN();
    const double m = sum / n;
    return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
  }
  double sem() const noexcept { return n < 2.0 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(variance() / n); }
  MeanWithError summary() const noexcept { return {mean(), sem(), static_cast<std::size_t>(n)}; }
};

/// Sample mean with standard error; two-pass, so it is exact for small samples.
MeanWithError mean_with_error(std::span<const double> xs);

/// Unbiased sample variance and an estimate of its own standard error,
/// sqrt((m4 - (n-3)/(n-1) s^4) / n).
struct VarianceWithError {
  double variance = 0.0;
  double se = 0.0;
};
VarianceWithError variance_with_error(std::span<const double> xs);

}  // namespace cqfi
