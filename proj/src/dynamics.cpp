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

#include "nhe/dynamics.hpp"

#include <fmt/format.h>

#include <cmath>

#include "nhe/linalg.hpp"
#include "nhe/units.hpp"

namespace nhe {

std::vector<double> Trajectory::grid() const {
  std::vector<double> g;
  g.reserve(states.size());
  for (const auto& s : states) g.push_back(s.time);
  return g;
}

namespace {

void require_dims(const NHHamiltonian& ham, const ComplexMatrix& state, const char* op) {
  if (ham.h.dim() != state.dim() || ham.gamma.dim() != state.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                fmt::format("{}: state has dimension {}, Hamiltonian {}", op, state.dim(), ham.dim()));
  }
}

double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

void require_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorCode::invalid_argument, "time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw Error(ErrorCode::invalid_argument, "time grid has a non-finite entry");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::invalid_argument,
                  fmt::format("time grid is not strictly increasing at index {}", i));
    }
  }
}

void require_psd(const ComplexMatrix& m, std::optional<double> time, const char* what) {
  if (!is_hermitian(m, tol::kHermitian)) {
    throw TimedError(ErrorCode::not_hermitian,
                     fmt::format("{} is not Hermitian (max asymmetry {:.3e})", what, hermitian_defect(m)),
                     time);
  }
  try {
    psd_eigenvalues(m);
  } catch (const Error& e) {
    if (time) {
      throw TimedError(e.code(), fmt::format("{} at t = {:.17g}: {}", what, *time, e.what()), time);
    }
    throw;
  }
}

}  // namespace

ComplexMatrix rhs_omega(const NHHamiltonian& ham, const ComplexMatrix& omega) {
  require_dims(ham, omega, "rhs_omega");
  return commutator(ham.h, omega) * Complex(0.0, -1.0 / kHbar) -
         anticommutator(ham.gamma, omega) * Complex(1.0 / kHbar);
}

ComplexMatrix rhs_rho(const NHHamiltonian& ham, const ComplexMatrix& rho) {
  require_dims(ham, rho, "rhs_rho");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol::kUnitTrace) {
    throw Error(ErrorCode::trace_violation,
                fmt::format("rhs_rho: Tr(rho) = {:.17g} deviates from 1", tr.real()));
  }
  const Complex gamma_avg = (ham.gamma * rho).trace();
  return rhs_omega(ham, rho) + rho * (2.0 / kHbar * gamma_avg);
}

OperatorRhs omega_rhs(NHHamiltonian ham) {
  ham.validate();
  return [ham = std::move(ham)](const ComplexMatrix& m) { return rhs_omega(ham, m); };
}

OperatorRhs rho_rhs(NHHamiltonian ham) {
  ham.validate();
  return [ham = std::move(ham)](const ComplexMatrix& m) { return rhs_rho(ham, m); };
}

double trace_rate(const ComplexMatrix& gamma, const ComplexMatrix& omega) {
  if (gamma.dim() != omega.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "trace_rate: dimension mismatch");
  }
  return (-2.0 / kHbar * (gamma * omega).trace()).real();
}

ComplexMatrix normalize(const ComplexMatrix& omega, std::optional<double> time) {
  const double tr = real_trace(omega);
  if (!(tr > tol::kTraceFloor)) {
    const std::string when = time ? fmt::format(" at t = {:.17g}", *time) : std::string();
    throw TimedError(ErrorCode::probability_extinct,
                     fmt::format("probability extinct{}: Tr(Omega) = {:.6e}", when, tr), time);
  }
  return omega * Complex(1.0 / tr);
}

namespace {

ComplexMatrixL propagator(const NHHamiltonian& ham, long double t) {
  const ComplexMatrixL hc = assemble_nh(ham).cast<long double>();
  return mat_exp(hc * std::complex<long double>(0.0L, -t / static_cast<long double>(kHbar)));
}

}  // namespace

ComplexMatrix propagate_exact(const NHHamiltonian& ham, const ComplexMatrix& omega0, double t) {
  require_dims(ham, omega0, "propagate_exact");
  require_psd(omega0, std::nullopt, "initial Omega");
  if (t == 0.0) return omega0;
  const ComplexMatrixL u = propagator(ham, t);
  const ComplexMatrixL out = u * omega0.cast<long double>() * u.adjoint();
  return hermitize(out).cast<double>();
}

Trajectory propagate_exact(const NHHamiltonian& ham, const ComplexMatrix& omega0,
                           std::span<const double> grid) {
  require_grid(grid);
  Trajectory traj;
  traj.states.reserve(grid.size());
  for (double t : grid) traj.states.push_back({t, propagate_exact(ham, omega0, t)});
  return traj;
}

std::vector<LogScaledState> propagate_log_domain(const NHHamiltonian& ham,
                                                 const ComplexMatrix& omega0,
                                                 std::span<const double> grid) {
  require_dims(ham, omega0, "propagate_log_domain");
  require_psd(omega0, std::nullopt, "initial Omega");
  require_grid(grid);

  std::vector<LogScaledState> out;
  out.reserve(grid.size());

  // Bring the initial state to the first grid time, then step.
  const double tr0 = real_trace(omega0);
  if (!(tr0 > tol::kTraceFloor)) normalize(omega0, grid.front());
  ComplexMatrixL shape = (omega0 * Complex(1.0 / tr0)).cast<long double>();
  long double log_trace = std::log(static_cast<long double>(tr0));

  double prev = 0.0;
  double cached_dt = -1.0;
  ComplexMatrixL u;
  for (double t : grid) {
    const double dt = t - prev;
    if (dt != 0.0) {
      if (dt != cached_dt) {
        u = propagator(ham, dt);
        cached_dt = dt;
      }
      shape = u * shape * u.adjoint();
      const long double tr = shape.trace().real();
      if (!(tr > 0) || !std::isfinite(static_cast<double>(tr))) {
        throw TimedError(ErrorCode::probability_extinct,
                         fmt::format("probability extinct at t = {:.17g}", t), t);
      }
      log_trace += std::log(tr);
      shape = hermitize(shape * std::complex<long double>(1.0L / tr));
    }
    out.push_back({t, shape.cast<double>(), static_cast<double>(log_trace)});
    prev = t;
  }
  return out;
}

Trajectory integrate(const OperatorRhs& rhs, const ComplexMatrix& initial,
                     std::span<const double> grid, IntegratorConfig config) {
  require_grid(grid);
  if (config.method == IntegratorConfig::Method::rk4_substeps && config.substeps_per_unit < 1) {
    throw Error(ErrorCode::invalid_argument, "integrate: substeps_per_unit must be positive");
  }
  require_psd(initial, grid.front(), "initial state");

  Trajectory traj;
  traj.states.reserve(grid.size());
  traj.states.push_back({grid.front(), initial});

  ComplexMatrix y = initial;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double span = grid[i] - grid[i - 1];
    std::size_t steps = 1;
    if (config.method == IntegratorConfig::Method::rk4_substeps) {
      steps = static_cast<std::size_t>(std::ceil(span * config.substeps_per_unit - 1e-9));
      steps = std::max<std::size_t>(steps, 1);
    }
    const double h = span / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
      const ComplexMatrix k1 = rhs(y);
      const ComplexMatrix k2 = rhs(y + k1 * Complex(0.5 * h));
      const ComplexMatrix k3 = rhs(y + k2 * Complex(0.5 * h));
      const ComplexMatrix k4 = rhs(y + k3 * Complex(h));
      y += (k1 + k2 * Complex(2.0) + k3 * Complex(2.0) + k4) * Complex(h / 6.0);
      y = hermitize(y);

      const double t_now = grid[i - 1] + h * static_cast<double>(s + 1);
      if (!all_finite(y)) {
        throw TimedError(ErrorCode::overflow,
                         fmt::format("integrate: state left the floating-point range at t = {:.17g}", t_now),
                         t_now);
      }
      if (!(real_trace(y) > tol::kTraceFloor)) normalize(y, t_now);
      require_psd(y, t_now, "integrated state");
    }
    traj.states.push_back({grid[i], y});
  }
  return traj;
}

std::vector<double> uniform_grid(double t_max, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "uniform_grid needs at least two points");
  if (!(t_max > 0)) throw Error(ErrorCode::invalid_argument, "uniform_grid needs t_max > 0");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

}  // namespace nhe
