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

#include "cqfi/errors.hpp"

namespace cqfi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonHermitianInput: return "NonHermitianInput";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNegativeVariance: return "NegativeVariance";
    case ErrorCode::kInvalidState: return "InvalidState";
    case ErrorCode::kNonTracelessDerivative: return "NonTracelessDerivative";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kPositivityLost: return "PositivityLost";
    case ErrorCode::kTraceDrift: return "TraceDrift";
    case ErrorCode::kVanishingOutcomeProbability: return "VanishingOutcomeProbability";
    case ErrorCode::kPopulationFloor: return "PopulationFloor";
    case ErrorCode::kIncompletePovm: return "IncompletePovm";
    case ErrorCode::kInvalidPovm: return "InvalidPovm";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kNormCollapse: return "NormCollapse";
    case ErrorCode::kNegativeSample: return "NegativeSample";
    case ErrorCode::kInsufficientSample: return "InsufficientSample";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kQuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cqfi
