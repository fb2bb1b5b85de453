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

#include "nhe/entropy.hpp"

#include <fmt/format.h>

#include <cmath>

#include "nhe/linalg.hpp"
#include "nhe/units.hpp"

namespace nhe {

namespace {

void require_unit_trace(const ComplexMatrix& rho, const char* op) {
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol::kUnitTrace) {
    throw Error(ErrorCode::trace_violation, fmt::format("{}: Tr(rho) = {:.17g}, expected 1", op, tr.real()));
  }
}

double require_live_trace(const ComplexMatrix& omega) {
  const double tr = omega.trace().real();
  if (!(tr > tol::kTraceFloor)) {
    throw Error(ErrorCode::probability_extinct, fmt::format("Tr(Omega) = {:.6e} is extinct", tr));
  }
  return tr;
}

/// Diagonal of V^dagger Gamma V: Gamma expectation in each eigenvector.
std::vector<double> diagonal_in_basis(const ComplexMatrix& gamma, const ComplexMatrix& v) {
  if (gamma.dim() != v.dim()) throw Error(ErrorCode::dimension_mismatch, "Gamma and state differ in dimension");
  const std::size_t n = v.dim();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += std::conj(v(i, k)) * gamma(i, j) * v(j, k);
    out[k] = s.real();
  }
  return out;
}

struct RhoSpectrum {
  SpectralDecomposition<double> sd;
  double entropy;   // -sum lambda ln lambda
  double smallest;  // smallest eigenvalue
};

RhoSpectrum rho_spectrum(const ComplexMatrix& rho) {
  auto pl = psd_log(rho);
  const double s = spectral_entropy(pl.spectrum.eigenvalues);
  const double smallest = pl.spectrum.eigenvalues.front();
  return {std::move(pl.spectrum), s, smallest};
}

/// Tr(Gamma rho ln rho) from the spectrum of rho.
double gamma_rho_log_rho(const ComplexMatrix& gamma, const SpectralDecomposition<double>& sd) {
  const auto g = diagonal_in_basis(gamma, sd.eigenvectors);
  double s = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double l = sd.eigenvalues[k];
    if (l > tol::kEigenCutoff) s += l * std::log(l) * g[k];
  }
  return s;
}

void require_rate_defined(double smallest) {
  if (smallest < tol::kRateCutoff) {
    throw Error(ErrorCode::rate_undefined,
                fmt::format("rate undefined at pure-state boundary (rho eigenvalue {:.3e})", smallest));
  }
}

/// Both rates given the rho spectrum and ln Tr(Omega).
std::pair<double, double> rates_from_spectrum(const ComplexMatrix& gamma, const ComplexMatrix& rho,
                                              const RhoSpectrum& spec, double log_trace) {
  const double g_avg = (gamma * rho).trace().real();
  const double grl = gamma_rho_log_rho(gamma, spec.sd);
  const double svn = kBoltzmann * spec.entropy;
  const double snh = svn - kBoltzmann * log_trace;
  const double rvn = 2.0 * kBoltzmann / kHbar * grl + 2.0 / kHbar * g_avg * svn;
  // ln Omega = ln rho + ln Tr(Omega) I
  const double grl_omega = grl + log_trace * g_avg;
  const double rnh = 2.0 * kBoltzmann / kHbar * grl_omega + 2.0 / kHbar * g_avg * snh +
                     2.0 * kBoltzmann / kHbar * g_avg;
  return {rvn, rnh};
}

}  // namespace

double spectral_entropy(std::span<const double> eigenvalues, double cutoff) {
  double s = 0.0;
  for (double l : eigenvalues)
    if (l > cutoff) s -= l * std::log(l);
  return s;
}

double s_vn(const ComplexMatrix& rho) {
  require_unit_trace(rho, "s_vn");
  return kBoltzmann * spectral_entropy(psd_eigenvalues(rho));
}

double s_nh(const ComplexMatrix& omega) {
  const double tr = require_live_trace(omega);
  const auto eig = psd_eigenvalues(omega);
  double num = 0.0;
  double den = 0.0;
  for (double l : eig) {
    if (l > tol::kEigenCutoff * tr) {
      num -= l * std::log(l);
      den += l;
    }
  }
  return kBoltzmann * num / den;
}

double rate_vn(const ComplexMatrix& gamma, const ComplexMatrix& rho) {
  require_unit_trace(rho, "rate_vn");
  const auto spec = rho_spectrum(rho);
  require_rate_defined(spec.smallest);
  const double g_avg = (gamma * rho).trace().real();
  return 2.0 * kBoltzmann / kHbar * gamma_rho_log_rho(gamma, spec.sd) +
         2.0 / kHbar * g_avg * kBoltzmann * spec.entropy;
}

double rate_nh(const ComplexMatrix& gamma, const ComplexMatrix& rho, const ComplexMatrix& omega) {
  require_unit_trace(rho, "rate_nh");
  const double tr = require_live_trace(omega);
  const double mismatch = max_abs_diff(normalize(omega), rho);
  if (mismatch > 1e-8) {
    throw Error(ErrorCode::inconsistent_pair,
                fmt::format("rate_nh: rho differs from Omega/Tr(Omega) by {:.3e}", mismatch));
  }
  // Spectrum of Omega; rho shares its eigenvectors.
  const auto sd = herm_eig(omega);
  std::vector<double> rho_eig(sd.eigenvalues.size());
  for (std::size_t k = 0; k < rho_eig.size(); ++k) rho_eig[k] = sd.eigenvalues[k] / tr;
  require_rate_defined(rho_eig.front());

  const auto g = diagonal_in_basis(gamma, sd.eigenvectors);
  double grl_omega = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) grl_omega += rho_eig[k] * std::log(sd.eigenvalues[k]) * g[k];
  const double g_avg = (gamma * rho).trace().real();
  const double snh = s_nh(omega);
  return 2.0 * kBoltzmann / kHbar * grl_omega + 2.0 / kHbar * g_avg * snh +
         2.0 * kBoltzmann / kHbar * g_avg;
}

std::vector<EntropySample> entropy_profile(const Trajectory& trajectory, const ComplexMatrix& gamma) {
  std::vector<EntropySample> out;
  out.reserve(trajectory.states.size());
  for (const auto& st : trajectory.states) {
    EntropySample s;
    s.time = st.time;
    s.trace_omega = st.state.trace().real();
    s.rho = normalize(st.state, st.time);
    const auto spec = rho_spectrum(s.rho);
    s.s_vn = kBoltzmann * spec.entropy;
    s.s_nh = s_nh(st.state);
    if (spec.smallest >= tol::kRateCutoff) {
      const auto [rvn, rnh] = rates_from_spectrum(gamma, s.rho, spec, std::log(s.trace_omega));
      s.rate_vn = rvn;
      s.rate_nh = rnh;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<EntropySample> entropy_profile(std::span<const LogScaledState> trajectory,
                                           const ComplexMatrix& gamma) {
  std::vector<EntropySample> out;
  out.reserve(trajectory.size());
  for (const auto& st : trajectory) {
    EntropySample s;
    s.time = st.time;
    s.trace_omega = std::exp(st.log_trace);
    s.rho = normalize(st.shape, st.time);
    const auto spec = rho_spectrum(s.rho);
    s.s_vn = kBoltzmann * spec.entropy;
    s.s_nh = s.s_vn - kBoltzmann * st.log_trace;
    if (spec.smallest >= tol::kRateCutoff) {
      const auto [rvn, rnh] = rates_from_spectrum(gamma, s.rho, spec, st.log_trace);
      s.rate_vn = rvn;
      s.rate_nh = rnh;
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nhe
