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

#include <span>
#include <vector>

#include "nhe/matrix.hpp"
#include "nhe/operators.hpp"
#include "nhe/parallel.hpp"

namespace nhe {

/// Two-level tunneling model with non-Hermitian detuning:
///   H = -hbar delta sigma_x,  Gamma = hbar gamma sigma_z + k hbar mu delta I,
/// started from diag(p, 1 - p). k = 0 gives pure detuning, k = 1 the
/// bounded-entropy model and k = 3/2 the growing-entropy model.
struct TwoLevelParams {
  double delta = 1.0;  ///< tunneling frequency, > 0
  double gamma = 0.0;  ///< detuning rate
  double p = 0.5;      ///< initial excited-state weight in [0, 1]
  double k = 0.0;      ///< gauge multiplier of the identity term

  double gamma_tilde() const { return gamma / delta; }
  double p_bar() const { return 2.0 * p - 1.0; }
  /// sqrt(gamma_tilde^2 - 1); throws out_of_domain unless |gamma_tilde| > 1.
  double mu() const;
  bool in_closed_form_domain() const;
  /// Range checks on delta and p (invalid_argument).
  void validate() const;
};

/// Gamma proportional to the identity with an arbitrary Hermitian H.
struct ConstGammaParams {
  double gamma0 = 0.0;
  ComplexMatrix h;
  double s_vn0 = 0.0;
};

/// diag(p, 1 - p)
ComplexMatrix initial_state(double p);

NHHamiltonian build_hamiltonian(const TwoLevelParams& params);

/// Bloch-basis coefficients of the closed-form Omega at tau = delta * t.
struct BlochFunctions {
  double fy = 0.0;
  double fz = 0.0;
  double F = 0.0;
};

BlochFunctions fyfzF(const TwoLevelParams& params, double tau);

/// e^{-2 k mu tau} / (2 mu^2) [2 fy sigma_y + fz sigma_z + F I]
ComplexMatrix omega_closed(const TwoLevelParams& params, double tau);

/// (fy/F) sigma_y + (fz/2F) sigma_z + I/2; independent of k.
ComplexMatrix rho_closed(const TwoLevelParams& params, double tau);

/// Tr omega_closed = e^{-2 k mu tau} F / mu^2
double trace_closed(const TwoLevelParams& params, double tau);

/// von Neumann entropy from the eigenvalues of rho_closed.
double svn_closed(const TwoLevelParams& params, double tau);

/// The two squared Bloch-length polynomials: F1 = 4 fy^2 + fz^2 written out
/// in hyperbolic functions, and the expanded polynomial F2 that the two-term
/// entropy formula uses as its prefactor.
struct SquaredLengths {
  double f1 = 0.0;
  double f2 = 0.0;
};

SquaredLengths f1_f2(const TwoLevelParams& params, double tau);

/// -F+^(2) ln F+^(1) - F-^(2) ln F-^(1) with F+-^(i) = (1 +- sqrt(F_i)/F)/2.
/// Diagnostic only; svn_closed is authoritative.
double svn_closed_literal(const TwoLevelParams& params, double tau);

/// svn_closed - ln(F / mu^2) + 2 k mu tau
double snh_closed(const TwoLevelParams& params, double tau);

/// Large-tau limit of S_NH for k = 1: ln[2 mu^2 / (gt (gt - mu pbar))].
double snh_limit_critical(const TwoLevelParams& params);

struct ConstGammaSolution {
  double trace_omega = 0.0;
  double s_vn = 0.0;
  double s_nh = 0.0;
};

/// Tr Omega = e^{-gamma0 t}, S_vN = S_vN(0), S_NH = S_vN(0) + k_B gamma0 t.
ConstGammaSolution const_gamma_solution(const ConstGammaParams& params, double t);

/// Hamiltonian of the constant-Gamma model.
NHHamiltonian build_hamiltonian(const ConstGammaParams& params);

struct ThresholdPoint {
  double k = 0.0;
  double slope = 0.0;        ///< least-squares dS_NH/dtau over the last 20% of the window
  double final_value = 0.0;  ///< S_NH at tau_probe
};

/// Large-tau S_NH slope per gauge multiplier. tau_probe <= 0 selects 10 / mu.
std::vector<ThresholdPoint> threshold_scan(const TwoLevelParams& base, const std::vector<double>& k_values,
                                           double tau_probe = 0.0, Execution exec = Execution::parallel);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace nhe
