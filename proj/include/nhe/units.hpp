// Copyright 2026 The nhentropy Authors
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

namespace nhe {

// Natural units. Every formula in the library is written with these
// constants so outputs can be re-dimensionalized in one place.
inline constexpr double kHbar = 1.0;
inline constexpr double kBoltzmann = 1.0;

/// Numerical thresholds shared by the operator, dynamics and entropy modules.
namespace tol {
/// Hermiticity check, relative to max(1, max|m_ij|).
inline constexpr double kHermitian = 1e-12;
/// Smallest eigenvalue accepted as PSD, relative to max(1, max|lambda|).
inline constexpr double kNegative = 1e-10;
/// Eigenvalues at or below this are treated as exact zeros (0 ln 0 = 0).
inline constexpr double kEigenCutoff = 1e-14;
/// Entropy production rates need every eigenvalue of rho above this.
inline constexpr double kRateCutoff = 1e-12;
/// Tr(omega) at or below this is reported as extinct probability.
inline constexpr double kTraceFloor = 1e-300;
/// Allowed deviation of Tr(rho) from one on input.
inline constexpr double kUnitTrace = 1e-9;
}  // namespace tol

}  // namespace nhe
