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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nhe/linalg.hpp"
#include "nhe/models.hpp"
#include "nhe/operators.hpp"
#include "support.hpp"

namespace nhe {
namespace {

using testing::random_hermitian;
using testing::random_matrix;

const auto sx = pauli(PauliAxis::x);
const auto sy = pauli(PauliAxis::y);
const auto sz = pauli(PauliAxis::z);
const auto id2 = ComplexMatrix::identity(2);

TEST(Pauli, Entries) {
  EXPECT_EQ(sx, ComplexMatrix({0, 1, 1, 0}));
  EXPECT_EQ(sz, ComplexMatrix({1, 0, 0, -1}));
  EXPECT_EQ(sy, ComplexMatrix({0, -kI, kI, 0}));
  // sx sy = i sz fixes the sign of sy
  EXPECT_TRUE(approx_equal(sx * sy, kI * sz));
}

TEST(Commutator, PauliIdentities) {
  EXPECT_TRUE(approx_equal(commutator(sx, sx), ComplexMatrix::zero(2)));
  EXPECT_TRUE(approx_equal(commutator(sx, sy), Complex(0, 2) * sz));
  auto g = testing::rng(1);
  const auto h = random_hermitian(g, 4);
  EXPECT_TRUE(approx_equal(commutator(h, ComplexMatrix::identity(4)), ComplexMatrix::zero(4)));
}

TEST(Anticommutator, PauliIdentities) {
  EXPECT_TRUE(approx_equal(anticommutator(sx, sy), ComplexMatrix::zero(2)));
  EXPECT_TRUE(approx_equal(anticommutator(sz, sz), 2.0 * id2));
  auto g = testing::rng(2);
  const auto a = random_matrix(g, 3);
  EXPECT_TRUE(approx_equal(anticommutator(a, ComplexMatrix::identity(3)), 2.0 * a));
}

TEST(Commutator, DimensionMismatchThrows) {
  try {
    commutator(sx, ComplexMatrix::identity(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
  EXPECT_THROW(anticommutator(sx, ComplexMatrix::identity(3)), Error);
}

TEST(Commutator, HermiticityProperty) {
  auto g = testing::rng(3);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto a = random_hermitian(g, n), b = random_hermitian(g, n);
      const auto c = commutator(a, b);
      EXPECT_LT(max_abs_diff(c.adjoint(), -1.0 * c), 1e-12);
      EXPECT_LT(hermitian_defect(anticommutator(a, b)), 1e-12);
    }
  }
}

TEST(AssembleNh, Examples) {
  EXPECT_TRUE(approx_equal(assemble_nh({ComplexMatrix::zero(2), ComplexMatrix::zero(2)}), ComplexMatrix::zero(2)));
  const NHHamiltonian tl{-1.0 * sx, 2.0 * sz};
  EXPECT_TRUE(approx_equal(assemble_nh(tl), ComplexMatrix({Complex(0, -2), -1, -1, Complex(0, 2)})));
  auto g = testing::rng(4);
  const auto h = random_hermitian(g, 3);
  EXPECT_TRUE(approx_equal(assemble_nh({h, ComplexMatrix::zero(3)}), h));
}

TEST(NhHamiltonian, ValidateRejectsBadInput) {
  const auto bad = ComplexMatrix({0, 1, 0, 0});
  try {
    NHHamiltonian{bad, sz}.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_hermitian);
  }
  EXPECT_THROW((NHHamiltonian{sx, bad}.validate()), Error);
  try {
    NHHamiltonian{sx, ComplexMatrix::identity(3)}.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dimension_mismatch);
  }
}

TEST(GaugeShift, Examples) {
  const double gamma = 2.0;
  EXPECT_TRUE(approx_equal(gauge_shift(gamma * sz, 0.0), gamma * sz));
  const double g0 = 0.7;
  EXPECT_TRUE(approx_equal(gauge_shift(ComplexMatrix::zero(2), 2.0 * g0), g0 * id2));
  const double mu = std::sqrt(3.0);
  EXPECT_TRUE(approx_equal(gauge_shift(gamma * sz, 2.0 * mu), gamma * sz + mu * id2));
}

// Spectral decomposition

void expect_valid_decomposition(const ComplexMatrix& m, const SpectralDecomposition<double>& d) {
  EXPECT_LT(max_abs_diff(d.reconstruct(), m), 1e-10);
  const auto& v = d.eigenvectors;
  EXPECT_LT(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(m.dim())), 1e-10);
  EXPECT_TRUE(std::is_sorted(d.eigenvalues.begin(), d.eigenvalues.end()));
}

TEST(HermEig, Examples) {
  const auto ez = herm_eig(sz);
  ASSERT_EQ(ez.eigenvalues.size(), 2u);
  EXPECT_NEAR(ez.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(ez.eigenvalues[1], 1.0, 1e-14);

  const auto d = herm_eig(initial_state(0.25));
  EXPECT_NEAR(d.eigenvalues[0], 0.25, 1e-15);
  EXPECT_NEAR(d.eigenvalues[1], 0.75, 1e-15);

  const auto ex = herm_eig(sx);
  EXPECT_NEAR(ex.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(ex.eigenvalues[1], 1.0, 1e-14);
  // eigenvector for -1 is (1, -1)/sqrt2 up to phase
  const Complex a = ex.eigenvectors(0, 0), b = ex.eigenvectors(1, 0);
  EXPECT_NEAR(std::abs(a), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(std::abs(a + b), 0.0, 1e-14);
  expect_valid_decomposition(sx, ex);
}

TEST(HermEig, RandomReconstructionAndOrthonormality) {
  auto g = testing::rng(5);
  for (std::size_t n = 1; n <= 16; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto m = random_hermitian(g, n, 3.0);
      expect_valid_decomposition(m, herm_eig(m));
    }
  }
}

TEST(HermEig, MatchesQuadraticFormulaOn2x2) {
  auto g = testing::rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    const auto m = random_hermitian(g, 2);
    const auto [lo, hi] = testing::eig2(m);
    const auto d = herm_eig(m);
    EXPECT_NEAR(d.eigenvalues[0], lo, 1e-13);
    EXPECT_NEAR(d.eigenvalues[1], hi, 1e-13);
  }
}

TEST(HermEig, DegenerateSpectrum) {
  auto g = testing::rng(7);
  const auto q = herm_eig(random_hermitian(g, 5)).eigenvectors;
  const std::vector<double> diag{1, 1, 1, 2, 2};
  const auto m = q * ComplexMatrix::diagonal(diag) * q.adjoint();
  expect_valid_decomposition(m, herm_eig(m));
}

TEST(HermEig, RejectsNonHermitian) {
  try {
    herm_eig(ComplexMatrix({0, 1, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_hermitian);
  }
}

// Matrix exponential

TEST(MatExp, Examples) {
  EXPECT_TRUE(approx_equal(mat_exp(ComplexMatrix::zero(3)), ComplexMatrix::identity(3)));
  const double half_pi = std::numbers::pi / 2;
  EXPECT_TRUE(approx_equal(mat_exp(Complex(0, half_pi) * sx), kI * sx, 1e-15));
  const double theta = 0.37;
  EXPECT_TRUE(approx_equal(mat_exp(Complex(0, theta) * sx), std::cos(theta) * id2 + Complex(0, std::sin(theta)) * sx,
                           1e-15));
}

TEST(MatExp, NonHermitianGeneratorMatchesTaylorOracle) {
  // m = -i Hc t with H = -sx, Gamma = 2 sz, t = 0.5
  const auto hc = assemble_nh(build_hamiltonian(TwoLevelParams{1.0, 2.0, 0.5, 0.0}));
  const ComplexMatrix m = Complex(0, -0.5) * hc;
  const auto oracle = testing::taylor_exp(m.cast<long double>(), 50).cast<double>();
  EXPECT_LT(max_abs_diff(mat_exp(m), oracle), 1e-10);
}

TEST(MatExp, RandomMatricesMatchTaylorOracle) {
  auto g = testing::rng(8);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      auto m = random_matrix(g, n);
      m *= Complex(1.5 / std::max(1.0, m.norm1()));
      const auto oracle = testing::taylor_exp(m.cast<long double>(), 40).cast<double>();
      EXPECT_LT(max_abs_diff(mat_exp(m), oracle), 1e-13);
    }
  }
}

TEST(MatExp, GroupProperty) {
  auto g = testing::rng(9);
  std::uniform_real_distribution<double> st(0.0, 2.0);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + rep % 4;
    auto m = random_matrix(g, n);
    m *= Complex(5.0 * std::uniform_real_distribution<double>(0.1, 1.0)(g) / m.norm1());
    const double s = st(g), t = st(g);
    const auto lhs = mat_exp(Complex(s + t) * m);
    const auto rhs = mat_exp(Complex(s) * m) * mat_exp(Complex(t) * m);
    EXPECT_LT(max_abs_diff(lhs, rhs) / std::max(1.0, lhs.max_abs()), 1e-9) << "rep " << rep;
  }
}

TEST(MatExp, HermitianAndAntiHermitianRoutes) {
  auto g = testing::rng(10);
  const auto h = random_hermitian(g, 4);
  // exp(i h) is unitary, exp(h) is Hermitian positive
  const auto u = mat_exp(kI * h);
  EXPECT_LT(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(4)), 1e-13);
  const auto e = mat_exp(h);
  EXPECT_LT(hermitian_defect(e), 1e-13);
  const auto oracle = testing::taylor_exp(h.cast<long double>(), 60).cast<double>();
  EXPECT_LT(max_abs_diff(e, oracle) / e.max_abs(), 1e-13);
}

TEST(MatExp, OverflowIsReported) {
  try {
    mat_exp(ComplexMatrix({800, 1, 0, 800}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::overflow);
  }
}

// PSD logarithm

TEST(PsdLog, Examples) {
  EXPECT_TRUE(approx_equal(psd_log(id2).log, ComplexMatrix::zero(2)));
  const double e = std::exp(1.0);
  const std::vector<double> d{e, e * e};
  EXPECT_TRUE(approx_equal(psd_log(ComplexMatrix::diagonal(d)).log, ComplexMatrix({1, 0, 0, 2}), 1e-14));
  const auto half = psd_log(0.5 * id2).log;
  EXPECT_NEAR(half(0, 0).real(), -0.6931471805599453, 1e-15);
  EXPECT_NEAR(half(1, 1).real(), -0.6931471805599453, 1e-15);
}

TEST(PsdLog, ZeroEigenvaluesAreMasked) {
  const auto l = psd_log(initial_state(1.0));
  EXPECT_TRUE(l.has_zero_eigenvalue());
  EXPECT_TRUE(std::isfinite(l.log(1, 1).real()));
}

TEST(PsdLog, RejectsNegativeSpectrum) {
  try {
    psd_log(-1.0 * id2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_psd);
  }
}

TEST(PsdLog, InvertsMatExpOnRandomHermitian) {
  auto g = testing::rng(11);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      auto h = random_hermitian(g, n);
      const auto spec = herm_eig(h).eigenvalues;
      const double width = std::max(std::abs(spec.front()), std::abs(spec.back()));
      h *= Complex(5.0 / width);  // spectrum in [-5, 5]
      EXPECT_LT(max_abs_diff(psd_log(mat_exp(h)).log, h), 1e-8);
    }
  }
}

TEST(PsdLog, InvertsMatExpOnWideDiagonalSpectrum) {
  // The full [-20, 20] range round-trips only where the eigenbasis is exact;
  // with a generic basis e^-20 sits below double resolution of e^20.
  for (double lo = -20.0; lo <= 0.0; lo += 5.0) {
    const std::vector<double> d{lo, 0.0, -lo};
    const auto m = ComplexMatrix::diagonal(d);
    EXPECT_LT(max_abs_diff(psd_log(mat_exp(m)).log, m), 1e-8);
  }
}

}  // namespace
}  // namespace nhe
