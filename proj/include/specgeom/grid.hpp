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

// Conformal metrics e^{2 phi} g on a flat 2-torus and their discrete
// Laplacians: five-point stiffness with lumped (or P1 consistent) mass.

#ifndef SPECGEOM_GRID_HPP_
#define SPECGEOM_GRID_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "specgeom/error.hpp"
#include "specgeom/manifolds.hpp"
#include "specgeom/metric_space.hpp"
#include "specgeom/rng.hpp"

namespace specgeom {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Node (i, j) sits at (i h1, j h2) and has index i * n2 + j.
struct ConformalGrid {
  FlatTorus base;
  int n1 = 0;
  int n2 = 0;
  std::vector<double> phi;

  static ConformalGrid flat(FlatTorus base, int n1, int n2) {
    ConformalGrid g{std::move(base), n1, n2, {}};
    g.phi.assign(static_cast<std::size_t>(n1) * n2, 0.0);
    g.validate();
    return g;
  }

  void validate() const {
    if (base.periods.size() != 2) throw PreconditionError("conformal grid: base must be a 2-torus");
    validate_model(base);
    if (n1 < 3 || n2 < 3) throw PreconditionError("conformal grid: need at least 3 nodes per side");
    if (phi.size() != static_cast<std::size_t>(n1) * n2) throw PreconditionError("conformal grid: phi has wrong size");
  }

  std::size_t size() const { return static_cast<std::size_t>(n1) * n2; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(((i % n1) + n1) % n1) * n2 + static_cast<std::size_t>(((j % n2) + n2) % n2);
  }
  double h1() const { return base.periods[0] / n1; }
  double h2() const { return base.periods[1] / n2; }
  double cell_area() const { return h1() * h2(); }
  Coords node(std::size_t idx) const {
    return {h1() * static_cast<double>(idx / n2), h2() * static_cast<double>(idx % n2)};
  }
  double volume() const {
    double v = 0.0;
    for (double p : phi) v += std::exp(2.0 * p);
    return v * cell_area();
  }
};

// Smooth random conformal exponent: a few low Fourier modes, rescaled so
// that max |phi| equals the amplitude.
inline std::vector<double> smooth_conformal_factor(const ConformalGrid& grid, double amplitude,
                                                   std::uint64_t seed, int modes = 2) {
  auto rng = make_rng(seed, 0xcf);
  std::vector<double> phi(grid.size(), 0.0);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (int a = -modes; a <= modes; ++a) {
    for (int b = 0; b <= modes; ++b) {
      if (b == 0 && a <= 0) continue;
      const double c = standard_normal(rng) / (1.0 + a * a + b * b);
      const double theta = two_pi * uniform01(rng);
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const auto x = grid.node(idx);
        phi[idx] += c * std::cos(two_pi * (a * x[0] / grid.base.periods[0] + b * x[1] / grid.base.periods[1]) + theta);
      }
    }
  }
  double peak = 0.0;
  for (double p : phi) peak = std::max(peak, std::abs(p));
  if (peak > 0.0)
    for (double& p : phi) p *= amplitude / peak;
  return phi;
}

struct DiscreteOperator {
  SparseMatrix stiffness;
  Eigen::VectorXd mass;  // lumped
  std::optional<SparseMatrix> consistent_mass;

  Eigen::Index size() const { return stiffness.rows(); }

  SparseMatrix mass_matrix() const {
    if (consistent_mass) return *consistent_mass;
    SparseMatrix m(size(), size());
    std::vector<Eigen::Triplet<double>> t;
    for (Eigen::Index i = 0; i < size(); ++i) t.emplace_back(i, i, mass[i]);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  }

  double energy(const Eigen::VectorXd& u) const { return u.dot(stiffness * u); }
  double l2(const Eigen::VectorXd& u) const {
    return consistent_mass ? u.dot(*consistent_mass * u) : u.dot(mass.cwiseProduct(u));
  }
};

// Five-point stiffness (the P1 stiffness of the type-I triangulation as
// well) and mass e^{2 phi} times the cell area; the consistent P1 mass uses
// the triangle mean of e^{2 phi}.
inline DiscreteOperator conformal_operator(const ConformalGrid& grid, bool consistent = false) {
  grid.validate();
  const auto n = static_cast<Eigen::Index>(grid.size());
  const double wx = grid.h2() / grid.h1(), wy = grid.h1() / grid.h2();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(grid.size() * 5);
  auto edge = [&t](std::size_t a, std::size_t b, double w) {
    t.emplace_back(a, a, w);
    t.emplace_back(b, b, w);
    t.emplace_back(a, b, -w);
    t.emplace_back(b, a, -w);
  };
  for (int i = 0; i < grid.n1; ++i) {
    for (int j = 0; j < grid.n2; ++j) {
      edge(grid.index(i, j), grid.index(i + 1, j), wx);
      edge(grid.index(i, j), grid.index(i, j + 1), wy);
    }
  }
  DiscreteOperator op;
  op.stiffness.resize(n, n);
  op.stiffness.setFromTriplets(t.begin(), t.end());
  op.mass.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) op.mass[i] = std::exp(2.0 * grid.phi[i]) * grid.cell_area();
  if (consistent) {
    std::vector<Eigen::Triplet<double>> mt;
    const double area = grid.cell_area() / 2.0;
    auto triangle = [&](std::size_t a, std::size_t b, std::size_t c) {
      const double f = (std::exp(2.0 * grid.phi[a]) + std::exp(2.0 * grid.phi[b]) + std::exp(2.0 * grid.phi[c])) / 3.0;
      const std::size_t v[3] = {a, b, c};
      for (auto p : v)
        for (auto q : v) mt.emplace_back(p, q, f * area / 12.0 * (p == q ? 2.0 : 1.0));
    };
    for (int i = 0; i < grid.n1; ++i) {
      for (int j = 0; j < grid.n2; ++j) {
        const auto a = grid.index(i, j), b = grid.index(i + 1, j), c = grid.index(i + 1, j + 1),
                   d = grid.index(i, j + 1);
        triangle(a, b, c);
        triangle(a, c, d);
      }
    }
    SparseMatrix m(n, n);
    m.setFromTriplets(mt.begin(), mt.end());
    op.consistent_mass = std::move(m);
  }
  return op;
}

// sum over nodes of |grad u|^p e^{(2-p) phi} times the cell area, with
// forward differences and periodic wrap. p = 2 does not see phi at all.
inline double grid_dirichlet_energy(const ConformalGrid& grid, std::span<const double> u, double p) {
  grid.validate();
  if (!(p >= 1.0)) throw PreconditionError("dirichlet energy: p must be >= 1");
  if (u.size() != grid.size()) throw PreconditionError("dirichlet energy: field has wrong size");
  double e = 0.0;
  for (int i = 0; i < grid.n1; ++i) {
    for (int j = 0; j < grid.n2; ++j) {
      const auto c = grid.index(i, j);
      const double gx = (u[grid.index(i + 1, j)] - u[c]) / grid.h1();
      const double gy = (u[grid.index(i, j + 1)] - u[c]) / grid.h2();
      const double g2 = gx * gx + gy * gy;
      const double term = p == 2.0 ? g2 : std::pow(g2, p / 2.0) * std::exp((2.0 - p) * grid.phi[c]);
      e += term;
    }
  }
  return e * grid.cell_area();
}

// The grid as a metric-measure space: base-metric distances, conformal
// volume weights.
inline FiniteMetricMeasureSpace grid_space(const ConformalGrid& grid) {
  std::vector<Coords> pts;
  std::vector<double> w;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pts.push_back(grid.node(i));
    w.push_back(std::exp(2.0 * grid.phi[i]) * grid.cell_area());
  }
  return FiniteMetricMeasureSpace::from_coordinates(std::move(pts), std::move(w), TorusMetric{grid.base.periods});
}

}  // namespace specgeom

#endif  // SPECGEOM_GRID_HPP_
