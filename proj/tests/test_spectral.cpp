// Copyright 2026 The Authors.
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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "specgeom/bounds.hpp"
#include "specgeom/eigensolve.hpp"
#include "specgeom/grid.hpp"
#include "specgeom/rayleigh.hpp"
#include "specgeom/spectra.hpp"

namespace specgeom {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJ01Squared = 5.783185962946784;  // first zero of J_0, squared

double factorial(int n) { return std::tgamma(n + 1.0); }

TEST(AnalyticSpectra, SphereMultiplicityMatchesHarmonicCount) {
  for (int m = 2; m <= 6; ++m) {
    EXPECT_EQ(sphere_multiplicity(m, 0), 1);
    for (int l = 1; l <= 12; ++l) {
      const double expect = (2.0 * l + m - 1) * factorial(l + m - 2) / (factorial(l) * factorial(m - 1));
      EXPECT_EQ(sphere_multiplicity(m, l), std::lround(expect)) << "m=" << m << " l=" << l;
    }
  }
  // S^1: cos and sin for every l >= 1.
  for (int l = 1; l <= 5; ++l) EXPECT_EQ(sphere_multiplicity(1, l), 2);
}

TEST(AnalyticSpectra, SphereSpectrumPrefix) {
  const auto s = sphere_spectrum(2, 2.0, 8).eigenvalues;
  const std::vector<double> expect{0, 0.5, 0.5, 0.5, 1.5, 1.5, 1.5, 1.5, 1.5};
  ASSERT_EQ(s.size(), expect.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], expect[i], 1e-15);
}

TEST(AnalyticSpectra, TorusSpectrumMatchesBruteForce) {
  const std::vector<double> periods{1.0, 1.7, 2.3};
  const auto got = torus_spectrum(periods, 300).eigenvalues;
  std::vector<double> all;
  for (int a = -20; a <= 20; ++a)
    for (int b = -30; b <= 30; ++b)
      for (int c = -40; c <= 40; ++c) {
        const double x = a / periods[0], y = b / periods[1], z = c / periods[2];
        all.push_back(4 * kPi * kPi * (x * x + y * y + z * z));
      }
  std::sort(all.begin(), all.end());
  ASSERT_EQ(got.size(), 301u);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], all[i], 1e-9 * (1 + all[i]));
}

TEST(AnalyticSpectra, CliffordEqualsIntrinsicFlatTorus) {
  const double r = 1.3;
  const auto a = clifford_spectrum(r, 200).eigenvalues;
  const auto b = torus_spectrum(clifford_intrinsic_torus(r).periods, 200).eigenvalues;
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10 * (1 + b[i]));
  EXPECT_THROW(intrinsic_spectrum(SubmanifoldModel{Catenoid{1.0}}, 3), DomainError);
}

TEST(AnalyticSpectra, WeylLimit) {
  EXPECT_NEAR(weyl_limit(2), 4.0 * kPi, 1e-12);
  EXPECT_NEAR(weyl_limit(1), kPi * kPi, 1e-12);
  const std::vector<double> periods{1.0, 1.0};
  const std::size_t k = 20000;
  const double lam = torus_spectrum(periods, k).eigenvalues[k];
  EXPECT_NEAR(lam / double(k), weyl_limit(2), 0.02 * weyl_limit(2));
}

// Exact spectrum of the periodic five-point operator with lumped mass.
std::vector<double> five_point_spectrum(double l1, double l2, int n1, int n2) {
  const double h1 = l1 / n1, h2 = l2 / n2;
  std::vector<double> v;
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) {
      const double sa = std::sin(kPi * a / n1), sb = std::sin(kPi * b / n2);
      v.push_back(4.0 * sa * sa / (h1 * h1) + 4.0 * sb * sb / (h2 * h2));
    }
  std::sort(v.begin(), v.end());
  return v;
}

TEST(Solvers, DenseMatchesFivePointClosedForm) {
  const auto grid = ConformalGrid::flat(FlatTorus{{2 * kPi, 3.0}}, 16, 12);
  const auto sol = eigensolve_dense(conformal_operator(grid), 30);
  const auto expect = five_point_spectrum(2 * kPi, 3.0, 16, 12);
  for (std::size_t i = 0; i <= 30; ++i) EXPECT_NEAR(sol.spectrum.eigenvalues[i], expect[i], 1e-9 * (1 + expect[i]));
}

TEST(Solvers, IterativeMatchesFivePointClosedFormOnFineGrid) {
  const auto grid = ConformalGrid::flat(FlatTorus{{2 * kPi, 2 * kPi}}, 64, 64);
  const auto sol = eigensolve_iterative(conformal_operator(grid), 12);
  const auto expect = five_point_spectrum(2 * kPi, 2 * kPi, 64, 64);
  for (std::size_t i = 0; i <= 12; ++i) EXPECT_NEAR(sol.spectrum.eigenvalues[i], expect[i], 1e-7 * (1 + expect[i]));
  const double h = 2 * kPi / 64;
  EXPECT_LE(sol.spectrum.eigenvalues[1], 1.0);
  EXPECT_GE(sol.spectrum.eigenvalues[1], 1.0 - 5 * h * h);
}

TEST(Solvers, DenseAndIterativeAgreeOnConformalGrid) {
  auto grid = ConformalGrid::flat(FlatTorus{{1.0, 1.5}}, 20, 24);
  grid.phi = smooth_conformal_factor(grid, 0.6, 3);
  for (bool consistent : {false, true}) {
    const auto op = conformal_operator(grid, consistent);
    const auto d = eigensolve_dense(op, 15).spectrum.eigenvalues;
    const auto it = eigensolve_iterative(op, 15).spectrum.eigenvalues;
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(it[i], d[i], 1e-6 * std::max(1.0, d[i]));
  }
}

TEST(Solvers, ConstantConformalFactorScalesSpectrum) {
  auto grid = ConformalGrid::flat(FlatTorus{{1.0, 1.0}}, 12, 12);
  const auto base = eigensolve_dense(conformal_operator(grid), 10).spectrum.eigenvalues;
  std::fill(grid.phi.begin(), grid.phi.end(), 0.4);
  const auto scaled = eigensolve_dense(conformal_operator(grid), 10).spectrum.eigenvalues;
  for (std::size_t i = 0; i < base.size(); ++i) EXPECT_NEAR(scaled[i], std::exp(-0.8) * base[i], 1e-9 * (1 + base[i]));
}

TEST(Solvers, ConsistentMassGivesUpperBounds) {
  // Conforming P1 Rayleigh-Ritz bounds the continuum spectrum from above.
  const auto grid = ConformalGrid::flat(FlatTorus{{2 * kPi, 2 * kPi}}, 24, 24);
  const auto d = eigensolve_dense(conformal_operator(grid, true), 8).spectrum.eigenvalues;
  const auto exact = torus_spectrum(grid.base.periods, 8).eigenvalues;
  for (std::size_t i = 1; i < d.size(); ++i) {
    EXPECT_GE(d[i], exact[i] - 1e-9);
    EXPECT_LT(d[i], 1.1 * exact[i]);
  }
}

TEST(Solvers, RejectsOversizedRequests) {
  const auto grid = ConformalGrid::flat(FlatTorus{{1.0, 1.0}}, 3, 3);
  const auto op = conformal_operator(grid);
  EXPECT_THROW(eigensolve_dense(op, 9), PreconditionError);
  EXPECT_THROW(eigensolve_iterative(op, 9), PreconditionError);
  EXPECT_THROW(eigensolve(op, 2, SpectrumMethod::analytic), PreconditionError);
}

TEST(Energies, SineEnergyOnTorus) {
  const int n = 256;
  const auto grid = ConformalGrid::flat(FlatTorus{{2 * kPi, 2 * kPi}}, n, n);
  std::vector<double> u(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) u[i] = std::sin(grid.node(i)[0]);
  // int |cos x|^2 over the square = 2 pi^2.
  EXPECT_NEAR(grid_dirichlet_energy(grid, u, 2.0), 2 * kPi * kPi, 1e-3);
  // int |cos x|^4 = 3/8 * 4 pi^2; forward differences carry an O(h^2) factor.
  const double h = 2 * kPi / n;
  EXPECT_NEAR(grid_dirichlet_energy(grid, u, 4.0), 1.5 * kPi * kPi, 1.5 * kPi * kPi * h * h);
}

TEST(Energies, PEnergyScalesWithConstantFactor) {
  auto grid = ConformalGrid::flat(FlatTorus{{1.0, 2.0}}, 16, 20);
  std::vector<double> u(grid.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::cos(0.7 * i) + 0.1 * i;
  const double e2 = grid_dirichlet_energy(grid, u, 2.0), e4 = grid_dirichlet_energy(grid, u, 4.0);
  std::fill(grid.phi.begin(), grid.phi.end(), 0.3);
  EXPECT_NEAR(grid_dirichlet_energy(grid, u, 2.0), e2, 1e-12 * e2);
  EXPECT_NEAR(grid_dirichlet_energy(grid, u, 4.0), std::exp(-0.6) * e4, 1e-12 * e4);
}

TEST(Rayleigh, QuotientsAndMinmax) {
  const auto grid = ConformalGrid::flat(FlatTorus{{1.0, 1.0}}, 16, 16);
  const auto op = conformal_operator(grid);
  EXPECT_NEAR(rayleigh_quotient(op, Eigen::VectorXd::Ones(op.size())), 0.0, 1e-12);
  EXPECT_THROW(rayleigh_quotient(op, Eigen::VectorXd::Zero(op.size())), PreconditionError);
  // Three bumps with disjoint supports bound lambda_2.
  std::vector<Eigen::VectorXd> bumps;
  for (int c : {2, 7, 12}) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(op.size());
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) f[grid.index(c + di, 4 + dj)] = (di == 0 && dj == 0) ? 1.0 : 0.5;
    bumps.push_back(f);
  }
  const auto b = minmax_upper_bound(op, bumps);
  const auto lam = eigensolve_dense(op, 2).spectrum.eigenvalues;
  EXPECT_GE(b.bound, lam[2]);
  EXPECT_LE(b.bound, b.max_individual + 1e-9);
  bumps[1] = bumps[0];
  EXPECT_THROW(minmax_upper_bound(op, bumps), PreconditionError);
}

TEST(Bounds, RatioFormulas) {
  BoundInputs in;
  in.lambda = 2.0;
  in.k = 4.0;
  in.dim = 2;
  in.volume = 8.0;
  in.rad = 0.5;
  EXPECT_NEAR(bound_ratio(BoundKind::be3, in), 2.0 * std::pow(0.5, 4) / (8.0 * 4.0), 1e-15);
  EXPECT_NEAR(bound_ratio(BoundKind::weyl, in), 2.0 * 8.0 / 4.0, 1e-15);
  in.conv = 0.25;
  EXPECT_NEAR(bound_ratio(BoundKind::croke, in), 2.0 * std::pow(0.25, 6) / (64.0 * 256.0), 1e-18);
  in.conformal_volume = 2.0;
  // lambda Vol~^{2/m} / ((Vol/rad^m)^{1+2/m} k^{2/m}) = 2 * 2 / (32^2 * 4).
  EXPECT_NEAR(bound_ratio(BoundKind::mt_conformal, in), 4.0 / (1024.0 * 4.0), 1e-15);
  in.dim = 3;
  in.sub_dim = 2;
  EXPECT_NEAR(bound_ratio(BoundKind::be5, in), 2.0 * std::pow(0.5, 5) / (8.0 * 4.0), 1e-15);
  in.kappa = 100.0;  // dominates rad^-2 k = 16
  EXPECT_NEAR(bound_ratio(BoundKind::tma2, in), 2.0 * 2.0 / (100.0 * 8.0), 1e-15);
  in.kappa = 0.0;
  EXPECT_NEAR(bound_ratio(BoundKind::tma2, in), 2.0 * 2.0 / (16.0 * 8.0), 1e-15);
  in.lambda = 0.0;
  EXPECT_THROW(bound_ratio(BoundKind::be3, in), DomainError);
  EXPECT_EQ(parse_bound_kind("be4"), BoundKind::be4);
  EXPECT_THROW(parse_bound_kind("nope"), ConfigError);
}

TEST(Bounds, NeighborhoodQuotientForAPointInThePlane) {
  // u = (1 - |x|/r0)_+: energy pi, mass pi r0^2 / 6.
  for (double r0 : {0.1, 1.0}) {
    EXPECT_NEAR(neighborhood_cutoff_quotient_bound(0.0, 2, r0, 1, 1), 6.0 / (r0 * r0), 1e-9 / (r0 * r0));
  }
  EXPECT_THROW(neighborhood_cutoff_quotient_bound(0.0, 2, 1.0, 1, 2), PreconditionError);
}

TEST(Bounds, DirichletDiscConvergesToBesselZero) {
  const auto coarse = dirichlet_lambda0_disc(1.0, 60);
  const auto fine = dirichlet_lambda0_disc(1.0, 240);
  EXPECT_NEAR(fine.lambda0, kJ01Squared, 1e-3 * kJ01Squared);
  EXPECT_LT(std::abs(fine.lambda0 - kJ01Squared), std::abs(coarse.lambda0 - kJ01Squared));
  // Exact scaling of the discretization.
  EXPECT_NEAR(dirichlet_lambda0_disc(2.0, 60).lambda0, coarse.lambda0 / 4.0, 1e-9 * coarse.lambda0);
  const double r = 0.3;
  const double ratio = croke_ratio(dirichlet_lambda0_disc(r, 240).lambda0, r, 2, kPi * r * r);
  EXPECT_NEAR(ratio, kJ01Squared / (kPi * kPi), 1e-3);
}

}  // namespace
}  // namespace specgeom
