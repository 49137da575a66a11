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

// Random inputs for property audits: Ginibre states, traceless Hermitian
// tangents and Haar-like probes, all driven by a PhiloxStream.

#pragma once

#include <cstddef>

#include "cqfi/operator_core.hpp"
#include "cqfi/random.hpp"

namespace cqfi {

/// G G^dagger / Tr for complex Gaussian G; full rank with probability one.
DensityMatrix random_density_matrix(std::size_t dim, PhiloxStream& rng);
/// Gaussian Hermitian matrix with its trace removed.
HermitianOperator random_traceless_hermitian(std::size_t dim, PhiloxStream& rng);
/// Normalized complex Gaussian vector.
PureState random_pure_state(std::size_t dim, PhiloxStream& rng);
/// Columns of a random unitary (QR of a complex Gaussian matrix).
Matrix random_unitary(std::size_t dim, PhiloxStream& rng);

}  // namespace cqfi
