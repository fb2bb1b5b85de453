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

// Random operators and independent reference computations for the tests.
// Nothing here calls into the library's numerics.

#include <cmath>
#include <complex>
#include <random>

#include "nhe/matrix.hpp"

namespace nhe::testing {

using CL = std::complex<long double>;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline ComplexMatrix random_matrix(std::mt19937_64& g, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {d(g), d(g)};
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& g, std::size_t n, double scale = 1.0) {
  const auto a = random_matrix(g, n, scale);
  return 0.5 * (a + a.adjoint());
}

/// Random full-rank density matrix: A A^dagger / Tr, plus a floor on the spectrum.
inline ComplexMatrix random_density(std::mt19937_64& g, std::size_t n, double floor = 0.05) {
  const auto a = random_matrix(g, n);
  ComplexMatrix m = a * a.adjoint();
  m += floor * m.trace().real() * ComplexMatrix::identity(n);
  return (1.0 / m.trace().real()) * m;
}

/// Plain Taylor series sum_{k < terms} m^k / k! in long double, no scaling.
/// Only accurate for modest norms; that is all the tests feed it.
inline BasicMatrix<long double> taylor_exp(const BasicMatrix<long double>& m, int terms) {
  const std::size_t n = m.dim();
  auto sum = BasicMatrix<long double>::identity(n);
  auto term = BasicMatrix<long double>::identity(n);
  for (int k = 1; k < terms; ++k) {
    term = term * m;
    term *= CL(1.0L / k);
    sum += term;
  }
  return sum;
}

/// Omega(tau) of the two-level model from exp(A tau) = cosh(mu tau) I + sinh(mu tau) A / mu,
/// A = i sx - gt sz (A^2 = mu^2 I), times the gauge factor e^{-k mu tau}. delta = 1.
inline ComplexMatrix two_level_oracle(double gt, double p, double k, double tau) {
  const long double mu = std::sqrt(static_cast<long double>(gt) * gt - 1.0L);
  const long double t = tau;
  const long double c = std::cosh(mu * t), s = std::sinh(mu * t) / mu;
  const long double gauge = std::exp(-k * mu * t);
  // U = gauge * (c I + s A), A = [[-gt, i], [i, gt]]
  const CL i(0, 1);
  const CL u00 = gauge * (c - s * gt), u01 = gauge * s * i, u10 = gauge * s * i, u11 = gauge * (c + s * gt);
  const long double p0 = p, p1 = 1.0L - p;
  // Omega = U diag(p0, p1) U^dagger
  const auto entry = [&](CL a0, CL a1, CL b0, CL b1) { return a0 * p0 * std::conj(b0) + a1 * p1 * std::conj(b1); };
  ComplexMatrix out(2);
  out(0, 0) = Complex(entry(u00, u01, u00, u01));
  out(0, 1) = Complex(entry(u00, u01, u10, u11));
  out(1, 0) = Complex(entry(u10, u11, u00, u01));
  out(1, 1) = Complex(entry(u10, u11, u10, u11));
  return out;
}

/// Entropy -x ln x - (1-x) ln(1-x) of a two-level spectrum {x, 1-x}.
inline double binary_entropy(double x) {
  const auto h = [](double v) { return v > 0.0 ? -v * std::log(v) : 0.0; };
  return h(x) + h(1.0 - x);
}

/// Eigenvalues of a 2x2 Hermitian matrix, ascending, from the quadratic formula.
inline std::pair<double, double> eig2(const ComplexMatrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double r = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  return {0.5 * (a + d) - r, 0.5 * (a + d) + r};
}

}  // namespace nhe::testing
