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

#include <optional>
#include <span>
#include <vector>

#include "nhe/dynamics.hpp"
#include "nhe/matrix.hpp"
#include "nhe/units.hpp"

namespace nhe {

/// Entropies and production rates at one time point (k_B = 1).
///
/// Invariants: s_nh = s_vn - ln(trace_omega) and 0 <= s_vn <= ln(dim).
/// Rates are absent where rho has an eigenvalue below the rate cutoff,
/// because ln(rho) diverges there.
struct EntropySample {
  double time = 0.0;
  double trace_omega = 0.0;
  double s_vn = 0.0;
  double s_nh = 0.0;
  std::optional<double> rate_vn;
  std::optional<double> rate_nh;
  ComplexMatrix rho;
};

/// -sum lambda ln lambda over the given eigenvalues, skipping lambda <= cutoff.
double spectral_entropy(std::span<const double> eigenvalues, double cutoff = tol::kEigenCutoff);

/// von Neumann entropy -k_B Tr(rho ln rho) of a unit-trace PSD operator.
double s_vn(const ComplexMatrix& rho);

/// Non-Hermitian entropy -k_B Tr(Omega ln Omega) / Tr(Omega).
double s_nh(const ComplexMatrix& omega);

/// dS_vN/dt = (2 k_B/hbar) Tr(Gamma rho ln rho) + (2/hbar) Tr(Gamma rho) S_vN.
/// Throws rate_undefined if rho has an eigenvalue below the rate cutoff.
double rate_vn(const ComplexMatrix& gamma, const ComplexMatrix& rho);

/// dS_NH/dt = (2 k_B/hbar) Tr(Gamma rho ln Omega) + (2/hbar) Tr(Gamma rho) S_NH
///            + (2 k_B/hbar) Tr(Gamma rho).
/// Throws inconsistent_pair unless normalize(omega) matches rho within 1e-8.
double rate_nh(const ComplexMatrix& gamma, const ComplexMatrix& rho, const ComplexMatrix& omega);

/// One sample per trajectory state (an Omega trajectory).
std::vector<EntropySample> entropy_profile(const Trajectory& trajectory, const ComplexMatrix& gamma);

/// Same, for a log-domain trajectory. trace_omega may under/overflow to 0 or
/// inf while s_nh stays exact.
std::vector<EntropySample> entropy_profile(std::span<const LogScaledState> trajectory,
                                           const ComplexMatrix& gamma);

}  // namespace nhe
