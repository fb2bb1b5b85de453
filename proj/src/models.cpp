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

#include "nhe/models.hpp"

#include <fmt/format.h>

#include <cmath>

#include "nhe/dynamics.hpp"
#include "nhe/entropy.hpp"
#include "nhe/linalg.hpp"
#include "nhe/units.hpp"

namespace nhe {

double TwoLevelParams::mu() const {
  if (!in_closed_form_domain()) {
    throw Error(ErrorCode::out_of_domain,
                fmt::format("outside closed-form domain: |gamma/delta| = {:.6g} must exceed 1",
                            std::abs(gamma_tilde())));
  }
  const double gt = gamma_tilde();
  return std::sqrt(gt * gt - 1.0);
}

bool TwoLevelParams::in_closed_form_domain() const { return std::abs(gamma_tilde()) > 1.0; }

void TwoLevelParams::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::invalid_argument, fmt::format("delta must be positive, got {}", delta));
  }
  if (!std::isfinite(gamma) || !std::isfinite(k)) {
    throw Error(ErrorCode::invalid_argument, "gamma and k must be finite");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, fmt::format("p must lie in [0, 1], got {}", p));
  }
}

ComplexMatrix initial_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, fmt::format("p must lie in [0, 1], got {}", p));
  }
  return ComplexMatrix{p, 0.0, 0.0, 1.0 - p};
}

NHHamiltonian build_hamiltonian(const TwoLevelParams& params) {
  params.validate();
  NHHamiltonian ham;
  ham.h = pauli(PauliAxis::x) * Complex(-kHbar * params.delta);
  ham.gamma = pauli(PauliAxis::z) * Complex(kHbar * params.gamma);
  if (params.k != 0.0) {
    const double shift = params.k * kHbar * params.mu() * params.delta;
    ham.gamma += ComplexMatrix::identity(2) * Complex(shift);
  }
  return ham;
}

NHHamiltonian build_hamiltonian(const ConstGammaParams& params) {
  NHHamiltonian ham{params.h, ComplexMatrix::identity(params.h.dim()) * Complex(0.5 * kHbar * params.gamma0)};
  ham.validate();
  return ham;
}

namespace {

using LD = long double;

struct ClosedForm {
  LD gt, pb, mu, fy, fz, F, gauge;  // gauge = e^{-2 k mu tau}
};

ClosedForm closed_form(const TwoLevelParams& params, double tau) {
  params.validate();
  params.mu();  // domain check
  if (!(tau >= 0.0)) throw Error(ErrorCode::invalid_argument, "closed forms need tau >= 0");
  ClosedForm c{};
  c.gt = static_cast<LD>(params.gamma) / static_cast<LD>(params.delta);
  c.pb = 2.0L * static_cast<LD>(params.p) - 1.0L;
  c.mu = std::sqrt(c.gt * c.gt - 1.0L);
  const LD x = c.mu * static_cast<LD>(tau);
  const LD sh = std::sinh(x), ch = std::cosh(x);
  const LD sh2 = std::sinh(2 * x), ch2 = std::cosh(2 * x);
  c.fy = sh * (c.mu * c.pb * ch - c.gt * sh);
  c.fz = c.mu * (c.mu * c.pb * ch2 - c.gt * sh2);
  c.F = c.gt * c.gt * ch2 - c.mu * c.pb * c.gt * sh2 - 1.0L;
  c.gauge = std::exp(-2.0L * static_cast<LD>(params.k) * x);
  return c;
}

}  // namespace

BlochFunctions fyfzF(const TwoLevelParams& params, double tau) {
  const auto c = closed_form(params, tau);
  return {static_cast<double>(c.fy), static_cast<double>(c.fz), static_cast<double>(c.F)};
}

ComplexMatrix omega_closed(const TwoLevelParams& params, double tau) {
  const auto c = closed_form(params, tau);
  const LD scale = c.gauge / (2.0L * c.mu * c.mu);
  using CL = std::complex<LD>;
  // 2 fy sigma_y + fz sigma_z + F I
  ComplexMatrixL m{CL(c.F + c.fz), CL(0, -2.0L * c.fy), CL(0, 2.0L * c.fy), CL(c.F - c.fz)};
  return (m * CL(scale)).cast<double>();
}

ComplexMatrix rho_closed(const TwoLevelParams& params, double tau) {
  const auto c = closed_form(params, tau);
  if (!(c.F > 0)) {
    throw Error(ErrorCode::out_of_domain, fmt::format("F(tau) = {} is not positive", static_cast<double>(c.F)));
  }
  using CL = std::complex<LD>;
  const LD a = c.fy / c.F, b = c.fz / (2.0L * c.F);
  ComplexMatrixL m{CL(0.5L + b), CL(0, -a), CL(0, a), CL(0.5L - b)};
  return m.cast<double>();
}

double trace_closed(const TwoLevelParams& params, double tau) {
  const auto c = closed_form(params, tau);
  return static_cast<double>(c.gauge * c.F / (c.mu * c.mu));
}

double svn_closed(const TwoLevelParams& params, double tau) {
  const auto rho = rho_closed(params, tau);
  return kBoltzmann * spectral_entropy(herm_eig(rho).eigenvalues);
}

SquaredLengths f1_f2(const TwoLevelParams& params, double tau) {
  const auto c = closed_form(params, tau);
  const LD x = c.mu * static_cast<LD>(tau);
  const LD mu2 = c.mu * c.mu, pb2 = c.pb * c.pb, gt2 = c.gt * c.gt;
  const LD a = c.mu * c.pb * std::cosh(x) - c.gt * std::sinh(x);
  const LD b = c.mu * c.pb * std::cosh(2 * x) - c.gt * std::sinh(2 * x);
  const LD f1 = 4 * std::sinh(x) * std::sinh(x) * a * a + mu2 * b * b;
  const LD f2 = c.mu * c.pb * c.gt * (2 * std::sinh(2 * x) - gt2 * std::sinh(4 * x)) +
                0.5L * gt2 * ((mu2 * (pb2 + 1) + 1) * std::cosh(4 * x) - 4 * std::cosh(2 * x)) +
                0.5L * (mu2 * mu2 * (pb2 - 1) - mu2 * (pb2 - 2) + 3);
  return {static_cast<double>(f1), static_cast<double>(f2)};
}

double svn_closed_literal(const TwoLevelParams& params, double tau) {
  const auto c = closed_form(params, tau);
  const auto sq = f1_f2(params, tau);
  const LD F = c.F;
  const auto branch = [&](LD fi, int sign) { return 0.5L * (1 + sign * std::sqrt(std::max(fi, 0.0L)) / F); };
  LD s = 0;
  for (int sign : {+1, -1}) {
    const LD w = branch(sq.f2, sign);
    const LD l = branch(sq.f1, sign);
    if (l > tol::kEigenCutoff) s -= w * std::log(l);
  }
  return kBoltzmann * static_cast<double>(s);
}

double snh_closed(const TwoLevelParams& params, double tau) {
  const auto c = closed_form(params, tau);
  const double svn = svn_closed(params, tau);
  const LD shift = 2.0L * static_cast<LD>(params.k) * c.mu * static_cast<LD>(tau);
  return svn + kBoltzmann * static_cast<double>(-std::log(c.F / (c.mu * c.mu)) + shift);
}

double snh_limit_critical(const TwoLevelParams& params) {
  const double gt = params.gamma_tilde();
  const double mu = params.mu();
  return kBoltzmann * std::log(2.0 * mu * mu / (gt * (gt - mu * params.p_bar())));
}

ConstGammaSolution const_gamma_solution(const ConstGammaParams& params, double t) {
  return {std::exp(-params.gamma0 * t), params.s_vn0, params.s_vn0 + kBoltzmann * params.gamma0 * t};
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "fit_slope needs two equally long series of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

std::vector<ThresholdPoint> threshold_scan(const TwoLevelParams& base, const std::vector<double>& k_values,
                                           double tau_probe, Execution exec) {
  base.validate();
  const double mu = base.mu();
  if (tau_probe <= 0.0) tau_probe = 10.0 / mu;
  constexpr std::size_t kSamples = 401;
  const auto tau_grid = uniform_grid(tau_probe, kSamples);
  std::vector<double> t_grid(tau_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) t_grid[i] = tau_grid[i] / base.delta;
  const std::size_t tail_begin = kSamples - kSamples / 5;

  std::vector<ThresholdPoint> out(k_values.size());
  parallel_for(k_values.size(), exec, [&](std::size_t i) {
    TwoLevelParams p = base;
    p.k = k_values[i];
    const auto ham = build_hamiltonian(p);
    const auto traj = propagate_log_domain(ham, initial_state(p.p), t_grid);
    const auto profile = entropy_profile(traj, ham.gamma);
    std::vector<double> x, y;
    for (std::size_t j = tail_begin; j < profile.size(); ++j) {
      x.push_back(tau_grid[j]);
      y.push_back(profile[j].s_nh);
    }
    out[i] = {p.k, fit_slope(x, y), profile.back().s_nh};
  });
  return out;
}

}  // namespace nhe
