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

#include "nhe/matrix.hpp"

namespace nhe {

enum class PauliAxis { x, y, z };

/// sigma_x = [[0,1],[1,0]], sigma_y = [[0,-i],[i,0]], sigma_z = [[1,0],[0,-1]].
ComplexMatrix pauli(PauliAxis axis);

/// ab - ba
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// ab + ba
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian pair (H, Gamma) of a non-Hermitian Hamiltonian H - i Gamma.
/// Entries are angular frequencies (hbar = 1).
struct NHHamiltonian {
  ComplexMatrix h;
  ComplexMatrix gamma;

  std::size_t dim() const noexcept { return h.dim(); }

  /// Throws dimension_mismatch or not_hermitian naming the offending part.
  void validate() const;
};

/// H - i Gamma.
ComplexMatrix assemble_nh(const NHHamiltonian& ham);

/// Gamma + (hbar alpha / 2) I. Multiplies Omega by exp(-alpha t) and leaves
/// rho unchanged.
ComplexMatrix gauge_shift(const ComplexMatrix& gamma, double alpha);

/// Throws not_hermitian naming `what` if m is not Hermitian.
void require_hermitian(const ComplexMatrix& m, const char* what);

}  // namespace nhe
