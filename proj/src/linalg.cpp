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

#include "nhe/linalg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nhe {

template <class Real>
BasicMatrix<Real> SpectralDecomposition<Real>::compose(
    const std::vector<std::complex<Real>>& diagonal) const {
  const std::size_t n = eigenvectors.dim();
  BasicMatrix<Real> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::complex<Real> s{};
      for (std::size_t k = 0; k < n; ++k)
        s += eigenvectors(i, k) * diagonal[k] * std::conj(eigenvectors(j, k));
      out(i, j) = s;
    }
  return out;
}

template <class Real>
BasicMatrix<Real> SpectralDecomposition<Real>::reconstruct() const {
  std::vector<std::complex<Real>> d(eigenvalues.begin(), eigenvalues.end());
  return compose(d);
}

namespace {

template <class Real>
Real off_diagonal_norm2(const BasicMatrix<Real>& a) {
  Real s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

template <class Real>
Real frobenius_norm2(const BasicMatrix<Real>& a) {
  Real s = 0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return s;
}

}  // namespace

template <class Real>
SpectralDecomposition<Real> herm_eig(const BasicMatrix<Real>& m, int max_sweeps) {
  if (!is_hermitian(m, Real(tol::kHermitian))) {
    throw Error(ErrorCode::not_hermitian,
                fmt::format("herm_eig: input is not Hermitian (max asymmetry {:.3e})",
                            static_cast<double>(hermitian_defect(m))));
  }
  using C = std::complex<Real>;
  const std::size_t n = m.dim();
  BasicMatrix<Real> a = hermitize(m);
  BasicMatrix<Real> v = BasicMatrix<Real>::identity(n);

  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real target = eps * eps * frobenius_norm2(a);
  int sweep = 0;
  while (off_diagonal_norm2(a) > target && off_diagonal_norm2(a) > 0) {
    if (++sweep > max_sweeps) {
      throw Error(ErrorCode::no_convergence,
                  fmt::format("herm_eig: no convergence after {} Jacobi sweeps", max_sweeps));
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Real r = std::abs(a(p, q));
        if (r == 0) continue;
        const C w = std::conj(a(p, q)) / r;  // e^{-i arg a_pq}
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const Real zeta = (aqq - app) / (2 * r);
        const Real t = (zeta >= 0 ? Real(1) : Real(-1)) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
        const Real c = 1 / std::sqrt(1 + t * t);
        const Real s = t * c;

        // A <- A W,  V <- V W
        for (std::size_t k = 0; k < n; ++k) {
          const C akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c - akq * (s * w);
          a(k, q) = akp * s + akq * (c * w);
          const C vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c - vkq * (s * w);
          v(k, q) = vkp * s + vkq * (c * w);
        }
        // A <- W^dagger A
        const C wc = std::conj(w);
        for (std::size_t k = 0; k < n; ++k) {
          const C apk = a(p, k), aqk = a(q, k);
          a(p, k) = apk * c - aqk * (s * wc);
          a(q, k) = apk * s + aqk * (c * wc);
        }
        a(p, q) = a(q, p) = C{};
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition<Real> out{std::vector<Real>(n), BasicMatrix<Real>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

template <class Real>
BasicMatrix<Real> mat_exp(const BasicMatrix<Real>& m) {
  using C = std::complex<Real>;
  const std::size_t n = m.dim();
  const Real norm = m.norm1();
  const auto overflow = [&] {
    return Error(ErrorCode::overflow,
                 fmt::format("mat_exp: result overflows (input 1-norm {:.6e})", static_cast<double>(norm)));
  };
  if (!all_finite(m)) throw overflow();

  const Real herm_tol = Real(tol::kHermitian);
  if (is_hermitian(m, herm_tol)) {
    const auto sd = herm_eig(m);
    std::vector<C> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = std::exp(sd.eigenvalues[k]);
    auto out = sd.compose(d);
    if (!all_finite(out)) throw overflow();
    return out;
  }
  // m = i H with H Hermitian: exp(m) is unitary.
  const BasicMatrix<Real> h = m * C(0, -1);
  if (is_hermitian(h, herm_tol)) {
    const auto sd = herm_eig(h);
    std::vector<C> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = std::polar(Real(1), sd.eigenvalues[k]);
    return sd.compose(d);
  }

  // Scale so the series argument has 1-norm at most 1/2.
  int squarings = 0;
  if (norm > Real(0.5)) squarings = static_cast<int>(std::ceil(std::log2(norm / Real(0.5))));
  if (squarings > 1100) throw overflow();
  const BasicMatrix<Real> b = m * C(std::ldexp(Real(1), -squarings));

  const Real eps = std::numeric_limits<Real>::epsilon();
  BasicMatrix<Real> sum = BasicMatrix<Real>::identity(n);
  BasicMatrix<Real> term = BasicMatrix<Real>::identity(n);
  for (int k = 1; k <= 60; ++k) {
    term = term * b;
    term *= C(Real(1) / Real(k));
    sum += term;
    if (term.norm1() <= eps * sum.norm1() * Real(1e-2)) break;
  }
  for (int s = 0; s < squarings; ++s) {
    sum = sum * sum;
    if (!all_finite(sum)) throw overflow();
  }
  return sum;
}

template struct SpectralDecomposition<double>;
template struct SpectralDecomposition<long double>;
template SpectralDecomposition<double> herm_eig(const BasicMatrix<double>&, int);
template SpectralDecomposition<long double> herm_eig(const BasicMatrix<long double>&, int);
template BasicMatrix<double> mat_exp(const BasicMatrix<double>&);
template BasicMatrix<long double> mat_exp(const BasicMatrix<long double>&);

bool PsdLog::has_zero_eigenvalue() const {
  return std::find(zero_mask.begin(), zero_mask.end(), true) != zero_mask.end();
}

namespace {

void check_psd(const std::vector<double>& eigenvalues, double neg_tol) {
  double scale = 1.0;
  for (double l : eigenvalues) scale = std::max(scale, std::abs(l));
  for (double l : eigenvalues) {
    if (l < -neg_tol * scale) {
      throw Error(ErrorCode::not_psd,
                  fmt::format("matrix is not positive semidefinite (eigenvalue {:.6e})", l));
    }
  }
}

}  // namespace

std::vector<double> psd_eigenvalues(const ComplexMatrix& m, double neg_tol) {
  auto sd = herm_eig(m);
  check_psd(sd.eigenvalues, neg_tol);
  return sd.eigenvalues;
}

PsdLog psd_log(const ComplexMatrix& m, double cutoff, double neg_tol) {
  auto sd = herm_eig(m);
  check_psd(sd.eigenvalues, neg_tol);
  const std::size_t n = m.dim();
  std::vector<Complex> logs(n);
  std::vector<bool> mask(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (sd.eigenvalues[k] <= cutoff) {
      mask[k] = true;
    } else {
      logs[k] = std::log(sd.eigenvalues[k]);
    }
  }
  auto log = sd.compose(logs);
  return PsdLog{std::move(log), std::move(sd), std::move(mask)};
}

}  // namespace nhe
