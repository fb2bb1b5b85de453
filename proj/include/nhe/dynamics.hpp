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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nhe/matrix.hpp"
#include "nhe/operators.hpp"

namespace nhe {

/// A density operator at one time. For Omega trajectories `state` is the
/// non-normalized operator; for rho trajectories it has unit trace.
struct EvolutionState {
  double time = 0.0;
  ComplexMatrix state;
};

struct Trajectory {
  std::vector<EvolutionState> states;

  std::vector<double> grid() const;
};

/// State derivative d(state)/dt as a function of the current state.
using OperatorRhs = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// -(i/hbar)[H, Omega] - (1/hbar){Gamma, Omega}
ComplexMatrix rhs_omega(const NHHamiltonian& ham, const ComplexMatrix& omega);

/// -(i/hbar)[H, rho] - (1/hbar){Gamma, rho} + (2/hbar) rho Tr(Gamma rho).
/// Requires Tr(rho) = 1 within 1e-9.
ComplexMatrix rhs_rho(const NHHamiltonian& ham, const ComplexMatrix& rho);

OperatorRhs omega_rhs(NHHamiltonian ham);
OperatorRhs rho_rhs(NHHamiltonian ham);

/// d/dt Tr(Omega) = -(2/hbar) Tr(Gamma Omega).
double trace_rate(const ComplexMatrix& gamma, const ComplexMatrix& omega);

/// Omega / Tr(Omega). Throws probability_extinct (carrying `time`) when the
/// trace is at or below the trace floor.
ComplexMatrix normalize(const ComplexMatrix& omega, std::optional<double> time = std::nullopt);

/// Omega(t) = exp(-i Hc t / hbar) Omega(0) exp(i Hc^dagger t / hbar), with the
/// propagator evaluated in extended precision.
ComplexMatrix propagate_exact(const NHHamiltonian& ham, const ComplexMatrix& omega0, double t);

/// propagate_exact at every grid time.
Trajectory propagate_exact(const NHHamiltonian& ham, const ComplexMatrix& omega0,
                           std::span<const double> grid);

/// Omega(t) = exp(log_trace) * shape with Tr(shape) = 1. Lets long runs keep
/// the trace out of the floating-point range without under/overflow.
struct LogScaledState {
  double time = 0.0;
  ComplexMatrix shape;
  double log_trace = 0.0;
};

/// Exact propagation between consecutive grid points, renormalizing after
/// every interval and accumulating ln Tr(Omega).
std::vector<LogScaledState> propagate_log_domain(const NHHamiltonian& ham,
                                                 const ComplexMatrix& omega0,
                                                 std::span<const double> grid);

/// Default RK4 resolution. 400 steps per unit time keeps the two-level models
/// within 1e-8 (scaled) of the exact propagator out to tau = 4 and Omega- and
/// rho-integration within 1e-8 of each other; 100 leaves ~1e-6.
inline constexpr int kDefaultSubstepsPerUnit = 400;

struct IntegratorConfig {
  enum class Method {
    rk4,           ///< one RK4 step per grid interval
    rk4_substeps,  ///< `substeps_per_unit` RK4 steps per unit of time
  };
  Method method = Method::rk4_substeps;
  int substeps_per_unit = kDefaultSubstepsPerUnit;
};

/// Fixed-step RK4 over `grid`. The state is re-Hermitized after every step and
/// checked for positivity and positive trace; violations throw a TimedError.
Trajectory integrate(const OperatorRhs& rhs, const ComplexMatrix& initial,
                     std::span<const double> grid, IntegratorConfig config = {});

/// n evenly spaced points from 0 to t_max inclusive.
std::vector<double> uniform_grid(double t_max, std::size_t n);

}  // namespace nhe
