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

// Randomized invariants of the evolution and entropy layers.

#include <gtest/gtest.h>

#include <cmath>

#include "nhe/dynamics.hpp"
#include "nhe/entropy.hpp"
#include "nhe/linalg.hpp"
#include "nhe/models.hpp"
#include "nhe/sweep.hpp"
#include "support.hpp"

namespace nhe {
namespace {

using testing::random_density;
using testing::random_hermitian;

struct RandomModel {
  NHHamiltonian ham;
  ComplexMatrix rho0;
};

RandomModel random_model(std::mt19937_64& g) {
  const std::size_t n = 2 + g() % 3;
  return {{random_hermitian(g, n), random_hermitian(g, n, 0.5)}, random_density(g, n)};
}

// The four models of the two-level family plus the constant-Gamma model.
std::vector<NHHamiltonian> reference_models(double gt) {
  std::vector<NHHamiltonian> out;
  for (double k : {0.0, 1.0, 1.5}) out.push_back(build_hamiltonian(TwoLevelParams{1.0, gt, 0.5, k}));
  out.push_back(build_hamiltonian(ConstGammaParams{1.0, -1.0 * pauli(PauliAxis::x), 0.0}));
  return out;
}

constexpr double kPs[] = {0.01, 0.25, 0.5, 0.75, 0.99};

TEST(EvolutionProperty, HermitianAndPositive) {
  auto g = testing::rng(70);
  for (int rep = 0; rep < 30; ++rep) {
    const auto m = random_model(g);
    const auto grid = uniform_grid(3.0, 31);
    const auto exact = propagate_exact(m.ham, m.rho0, grid);
    const auto rk = integrate(omega_rhs(m.ham), m.rho0, grid);
    for (const auto* traj : {&exact, &rk}) {
      for (const auto& s : traj->states) {
        EXPECT_LT(hermitian_defect(s.state), 1e-10);
        const auto ev = herm_eig(s.state).eigenvalues;
        EXPECT_GE(ev.front(), -1e-9 * std::max(1.0, ev.back()));
      }
    }
  }
}

TEST(EvolutionProperty, TraceLaw) {
  auto g = testing::rng(71);
  for (int rep = 0; rep < 30; ++rep) {
    const auto m = random_model(g);
    for (double t : {0.3, 1.0, 2.0}) {
      const double h = 1e-4;
      const double fd = (propagate_exact(m.ham, m.rho0, t + h).trace().real() -
                         propagate_exact(m.ham, m.rho0, t - h).trace().real()) /
                        (2 * h);
      const double rate = trace_rate(m.ham.gamma, propagate_exact(m.ham, m.rho0, t));
      EXPECT_LT(std::abs(fd - rate), 1e-6 * std::max(std::abs(rate), 1e-3)) << "rep " << rep;
    }
  }
}

TEST(EvolutionProperty, IntegratorMatchesExactPropagator) {
  // default resolution, scaled by the largest entry of the exact state
  const auto grid = uniform_grid(4.0, 41);
  for (double gt : {-2.0, 2.0}) {
    for (const auto& ham : reference_models(gt)) {
      for (double p : kPs) {
        const auto exact = propagate_exact(ham, initial_state(p), grid);
        const auto rk = integrate(omega_rhs(ham), initial_state(p), grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const auto& ref = exact.states[i].state;
          EXPECT_LT(max_abs_diff(rk.states[i].state, ref) / std::max(1.0, ref.max_abs()), 1e-8);
        }
      }
    }
  }
}

TEST(EvolutionProperty, ErrorFallsWithFourthPower) {
  const auto grid = uniform_grid(4.0, 41);
  const auto ham = build_hamiltonian(TwoLevelParams{1.0, 2.0, 0.5, 1.5});
  const auto exact = propagate_exact(ham, initial_state(0.25), grid);
  const auto error_at = [&](int substeps) {
    IntegratorConfig config;
    config.substeps_per_unit = substeps;
    const auto rk = integrate(omega_rhs(ham), initial_state(0.25), grid, config);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& ref = exact.states[i].state;
      worst = std::max(worst, max_abs_diff(rk.states[i].state, ref) / std::max(1.0, ref.max_abs()));
    }
    return worst;
  };
  const double coarse = error_at(50), fine = error_at(100);
  EXPECT_NEAR(coarse / fine, 16.0, 2.0);
  RecordProperty("rk4_error_100_substeps", std::to_string(fine));
}

TEST(EvolutionProperty, NormalizationCommutesWithDynamics) {
  const auto grid = uniform_grid(4.0, 41);
  for (double gt : {-2.0, 2.0}) {
    for (const auto& ham : reference_models(gt)) {
      for (double p : kPs) {
        const auto om = integrate(omega_rhs(ham), initial_state(p), grid);
        const auto rho = integrate(rho_rhs(ham), initial_state(p), grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          EXPECT_LT(max_abs_diff(normalize(om.states[i].state), rho.states[i].state), 1e-7);
          EXPECT_NEAR(rho.states[i].state.trace().real(), 1.0, 1e-9);
        }
      }
    }
  }
}

TEST(EvolutionProperty, GaugeCovariance) {
  auto g = testing::rng(72);
  std::uniform_real_distribution<double> alpha_dist(-2.0, 3.0);
  for (int rep = 0; rep < 30; ++rep) {
    const auto m = random_model(g);
    const double alpha = alpha_dist(g);
    const NHHamiltonian shifted{m.ham.h, gauge_shift(m.ham.gamma, alpha)};
    const auto grid = uniform_grid(3.0, 13);
    const auto a = propagate_exact(m.ham, m.rho0, grid);
    const auto b = propagate_exact(shifted, m.rho0, grid);
    const auto ea = entropy_profile(a, m.ham.gamma);
    const auto eb = entropy_profile(b, shifted.gamma);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      const auto expected = std::exp(-alpha * t) * a.states[i].state;
      EXPECT_LT(max_abs_diff(b.states[i].state, expected) / std::max(1.0, expected.max_abs()), 1e-8);
      EXPECT_LT(max_abs_diff(normalize(b.states[i].state), normalize(a.states[i].state)), 1e-9);
      EXPECT_NEAR(eb[i].s_vn, ea[i].s_vn, 1e-9);
      EXPECT_NEAR(eb[i].s_nh, ea[i].s_nh + alpha * t, 1e-8);
    }
  }
}

TEST(EntropyProperty, IdentityBoundsAndSignLaw) {
  auto g = testing::rng(73);
  int above = 0, below = 0;
  for (int rep = 0; rep < 40; ++rep) {
    const auto m = random_model(g);
    const auto prof = entropy_profile(propagate_exact(m.ham, m.rho0, uniform_grid(3.0, 16)), m.ham.gamma);
    const double ln_dim = std::log(static_cast<double>(m.rho0.dim()));
    for (const auto& s : prof) {
      EXPECT_LT(std::abs(s.s_nh - s.s_vn + std::log(s.trace_omega)), 1e-10);
      EXPECT_GE(s.s_vn, 0.0);
      EXPECT_LE(s.s_vn, ln_dim + 1e-9);
      if (std::abs(s.trace_omega - 1.0) > 1e-9) {
        EXPECT_EQ(s.s_nh > s.s_vn, s.trace_omega < 1.0);
        (s.trace_omega < 1.0 ? above : below)++;
      }
    }
  }
  // both branches of the sign law were exercised
  EXPECT_GT(above, 0);
  EXPECT_GT(below, 0);
}

TEST(EntropyProperty, RatesMatchFiniteDifferences) {
  auto g = testing::rng(74);
  for (int rep = 0; rep < 20; ++rep) {
    const auto m = random_model(g);
    const double h = 1e-4;
    for (double t : {0.5, 1.5}) {
      const auto prof = entropy_profile(propagate_exact(m.ham, m.rho0, std::vector<double>{t - h, t, t + h}), m.ham.gamma);
      if (!prof[1].rate_vn) continue;
      const double fd_vn = (prof[2].s_vn - prof[0].s_vn) / (2 * h);
      const double fd_nh = (prof[2].s_nh - prof[0].s_nh) / (2 * h);
      EXPECT_LT(std::abs(*prof[1].rate_vn - fd_vn), 1e-4 * std::max(std::abs(fd_vn), 1e-2)) << "rep " << rep;
      EXPECT_LT(std::abs(*prof[1].rate_nh - fd_nh), 1e-4 * std::max(std::abs(fd_nh), 1e-2)) << "rep " << rep;
      // the standalone functionals agree with the profile
      EXPECT_NEAR(rate_vn(m.ham.gamma, prof[1].rho), *prof[1].rate_vn, 1e-10 * std::max(1.0, std::abs(fd_vn)));
    }
  }
}

TEST(SweepProperty, SerialAndParallelAreBitIdentical) {
  const auto points = figure_parameter_grid(1.5);
  const auto grid = uniform_grid(4.0, 41);
  for (auto mode : {PropagationConfig::Mode::exact, PropagationConfig::Mode::rk4}) {
    PropagationConfig config;
    config.mode = mode;
    const auto a = two_level_profiles(points, grid, config, Execution::serial);
    const auto b = two_level_profiles(points, grid, config, Execution::parallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        EXPECT_EQ(a[i].omega.states[j].state, b[i].omega.states[j].state);
        EXPECT_EQ(a[i].samples[j].s_nh, b[i].samples[j].s_nh);
        EXPECT_EQ(a[i].samples[j].rate_vn, b[i].samples[j].rate_vn);
      }
    }
  }
}

TEST(SweepProperty, ParallelPropagatesFirstError) {
  std::vector<TwoLevelParams> points = figure_parameter_grid(0.0);
  points[3].p = 2.0;  // invalid
  EXPECT_THROW(two_level_profiles(points, uniform_grid(1.0, 3), {}, Execution::parallel), Error);
}

}  // namespace
}  // namespace nhe
