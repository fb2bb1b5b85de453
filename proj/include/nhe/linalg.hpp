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

#include <vector>

#include "nhe/matrix.hpp"
#include "nhe/units.hpp"

namespace nhe {

/// Eigen-decomposition M = V diag(eigenvalues) V^dagger of a Hermitian matrix.
/// Eigenvalues are ascending; columns of V are orthonormal.
template <class Real>
struct SpectralDecomposition {
  std::vector<Real> eigenvalues;
  BasicMatrix<Real> eigenvectors;

  /// V f(D) V^dagger for the given per-eigenvalue values.
  BasicMatrix<Real> compose(const std::vector<std::complex<Real>>& diagonal) const;
  BasicMatrix<Real> reconstruct() const;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
/// Throws not_hermitian, or no_convergence after `max_sweeps` sweeps.
template <class Real>
SpectralDecomposition<Real> herm_eig(const BasicMatrix<Real>& m, int max_sweeps = 100);

/// Matrix exponential. Hermitian and anti-Hermitian inputs go through the
/// eigendecomposition; everything else through scaling and squaring of a
/// Taylor series summed to working precision. Throws overflow with the norm
/// of the input when the result is not representable.
template <class Real>
BasicMatrix<Real> mat_exp(const BasicMatrix<Real>& m);

/// Logarithm of a positive semidefinite Hermitian matrix together with the
/// spectrum it was built from. Eigenvalues at or below `cutoff` are flagged
/// in `zero_mask` and get log value 0 so that lambda ln lambda contracts to 0.
struct PsdLog {
  ComplexMatrix log;
  SpectralDecomposition<double> spectrum;
  std::vector<bool> zero_mask;

  bool has_zero_eigenvalue() const;
};

PsdLog psd_log(const ComplexMatrix& m, double cutoff = tol::kEigenCutoff,
               double neg_tol = tol::kNegative);

/// Eigenvalues of a Hermitian PSD matrix; throws not_psd if one is below
/// -neg_tol * max(1, max|lambda|). Values inside the tolerance band are kept.
std::vector<double> psd_eigenvalues(const ComplexMatrix& m, double neg_tol = tol::kNegative);

}  // namespace nhe
