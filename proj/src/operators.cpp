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

#include "nhe/operators.hpp"

#include <fmt/format.h>

#include "nhe/units.hpp"

namespace nhe {

ComplexMatrix pauli(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::x: return ComplexMatrix{0.0, 1.0, 1.0, 0.0};
    case PauliAxis::y: return ComplexMatrix{0.0, -kI, kI, 0.0};
    case PauliAxis::z: return ComplexMatrix{1.0, 0.0, 0.0, -1.0};
  }
  throw Error(ErrorCode::invalid_argument, "pauli: unknown axis");
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                fmt::format("{}: dimension mismatch ({} vs {})", op, a.dim(), b.dim()));
  }
}

}  // namespace

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  if (!is_hermitian(m, tol::kHermitian)) {
    throw Error(ErrorCode::not_hermitian,
                fmt::format("{} is not Hermitian (max asymmetry {:.3e})", what, hermitian_defect(m)));
  }
}

void NHHamiltonian::validate() const {
  if (h.dim() != gamma.dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                fmt::format("Hamiltonian parts differ in dimension: H is {}, Gamma is {}", h.dim(),
                            gamma.dim()));
  }
  require_hermitian(h, "H");
  require_hermitian(gamma, "Gamma");
}

ComplexMatrix assemble_nh(const NHHamiltonian& ham) {
  ham.validate();
  return ham.h - kI * ham.gamma;
}

ComplexMatrix gauge_shift(const ComplexMatrix& gamma, double alpha) {
  require_hermitian(gamma, "Gamma");
  return gamma + ComplexMatrix::identity(gamma.dim()) * Complex(0.5 * kHbar * alpha);
}

}  // namespace nhe
