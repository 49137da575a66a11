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

#include "cqfi/statistics.hpp"

#include <algorithm>

#include "cqfi/errors.hpp"

namespace cqfi {

MeanWithError mean_with_error(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorCode::kEmptySample, "no samples");
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  MeanWithError out{mean, std::numeric_limits<double>::quiet_NaN(), xs.size()};
  if (xs.size() >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    out.sem = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

VarianceWithError variance_with_error(std::span<const double> xs) {
  if (xs.size() < 4) throw Error(ErrorCode::kInsufficientSample, "variance error needs at least 4 samples");
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = (x - mean) * (x - mean);
    m2 += d;
    m4 += d * d;
  }
  const double s2 = m2 / (n - 1.0);
  m4 /= n;
  const double var_of_var = std::max(0.0, (m4 - (n - 3.0) / (n - 1.0) * s2 * s2) / n);
  return {s2, std::sqrt(var_of_var)};
}

}  // namespace cqfi
