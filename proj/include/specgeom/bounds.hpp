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

// Scale-invariant eigenvalue bound ratios, the Weyl limit, and the flat-disc
// Dirichlet eigenvalue used for the convexity-radius bound.

#ifndef SPECGEOM_BOUNDS_HPP_
#define SPECGEOM_BOUNDS_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "specgeom/comparison.hpp"
#include "specgeom/error.hpp"
#include "specgeom/manifolds.hpp"
#include "specgeom/quadrature.hpp"

namespace specgeom {

enum class BoundKind { be3, mt_conformal, be4, be5, tma2, croke, weyl };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::be3: return "be3";
    case BoundKind::mt_conformal: return "mt_conformal";
    case BoundKind::be4: return "be4";
    case BoundKind::be5: return "be5";
    case BoundKind::tma2: return "tma2";
    case BoundKind::croke: return "croke";
    default: return "weyl";
  }
}

inline BoundKind parse_bound_kind(const std::string& s) {
  for (auto k : {BoundKind::be3, BoundKind::mt_conformal, BoundKind::be4, BoundKind::be5,
                 BoundKind::tma2, BoundKind::croke, BoundKind::weyl}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError("unknown bound kind '" + s + "'");
}

// Only the fields a kind reads need to be set.
struct BoundInputs {
  double lambda = 0.0;
  double k = 1.0;
  int dim = 0;                // m (ambient) or n (submanifold) as the kind needs
  int sub_dim = 0;            // n for be5 / tma2
  double volume = 0.0;        // Vol_g, Vol(Sigma), Vol_g(M), or Vol for weyl / croke
  double conformal_volume = 0.0;  // Vol of the conformal metric (mt_conformal, tma2)
  double rad = 0.0;
  double conv = 0.0;
  double kappa = 0.0;
};

namespace detail {
inline void need(bool ok, const char* what) {
  if (!ok) throw DomainError(std::string("bound_ratio: ") + what + " must be positive");
}
}  // namespace detail

inline double bound_ratio(BoundKind kind, const BoundInputs& in) {
  using detail::need;
  need(in.lambda > 0.0, "lambda");
  need(in.k >= 1.0, "k");
  need(in.volume > 0.0, "volume");
  const double k = in.k;
  switch (kind) {
    case BoundKind::be3:
    case BoundKind::be4: {
      need(in.dim >= 1, "dim");
      need(in.rad > 0.0, "rad");
      const int m = in.dim;
      return in.lambda * std::pow(in.rad, m + 2) / (in.volume * std::pow(k, 2.0 / m));
    }
    case BoundKind::mt_conformal: {
      need(in.dim >= 1, "dim");
      need(in.rad > 0.0, "rad");
      need(in.conformal_volume > 0.0, "conformal volume");
      const double m = in.dim;
      return in.lambda * std::pow(in.conformal_volume, 2.0 / m) /
             (std::pow(in.volume / std::pow(in.rad, m), 1.0 + 2.0 / m) * std::pow(k, 2.0 / m));
    }
    case BoundKind::be5: {
      need(in.dim >= 1 && in.sub_dim >= 1, "dims");
      need(in.rad > 0.0, "rad");
      return in.lambda * std::pow(in.rad, in.dim + 2) / (in.volume * std::pow(k, 2.0 / in.sub_dim));
    }
    case BoundKind::tma2: {
      need(in.sub_dim >= 1, "sub_dim");
      need(in.rad > 0.0, "rad");
      need(in.conformal_volume > 0.0, "conformal volume");
      if (!(in.kappa >= 0.0)) throw DomainError("bound_ratio: kappa must be >= 0");
      const double n = in.sub_dim;
      const double scale = std::max(in.kappa, std::pow(k, 2.0 / n) / (in.rad * in.rad));
      return in.lambda * std::pow(in.conformal_volume, 2.0 / n) / (scale * std::pow(in.volume, 2.0 / n));
    }
    case BoundKind::croke: {
      need(in.dim >= 1, "dim");
      need(in.conv > 0.0, "conv");
      const int m = in.dim;
      return in.lambda * std::pow(in.conv, 2 * m + 2) / (in.volume * in.volume * std::pow(k, 2 * m));
    }
    case BoundKind::weyl: {
      need(in.dim >= 1, "dim");
      const double m = in.dim;
      return in.lambda * std::pow(in.volume, 2.0 / m) / std::pow(k, 2.0 / m);
    }
  }
  throw DomainError("bound_ratio: unknown kind");
}

// lim lambda_k Vol^{2/m} / k^{2/m} = 4 pi^2 / omega_m^{2/m}.
inline double weyl_limit(int m) {
  return 4.0 * std::numbers::pi * std::numbers::pi / std::pow(unit_ball_volume(m), 2.0 / m);
}

// Rayleigh-quotient bound for u = (1 - dist(., A)/r0)_+ on a space form of
// curvature delta: energy <= r0^{-2} |A| V(r0), and the mass is at least that
// of |S| disjoint radial profiles for a 2 r0-separated subset S of A.
inline double neighborhood_cutoff_quotient_bound(double delta, int n, double r0,
                                                 std::size_t set_size, std::size_t separated) {
  if (set_size == 0 || separated == 0 || separated > set_size) {
    throw PreconditionError("neighborhood_cutoff_quotient_bound: bad counts");
  }
  const double energy = double(set_size) * model_ball_volume(delta, n, r0) / (r0 * r0);
  auto profile = [&](double t) {
    const double s = 1.0 - t / r0;
    return s * s * model_sphere_area(delta, n, t);
  };
  const double mass = double(separated) * integrate(profile, 0.0, r0, 1e-12).value;
  return energy / mass;
}

struct DirichletDisc {
  double lambda0 = 0.0;
  double radius = 0.0;
  int resolution = 0;
  int unknowns = 0;
  int iterations = 0;
};

// First Dirichlet eigenvalue of the disc of radius r (a geodesic ball of a
// flat torus when r < inj), Shortley-Weller five-point scheme on a grid with
// `resolution` cells across the diameter, inverse iteration with sparse LU.
inline DirichletDisc dirichlet_lambda0_disc(double r, int resolution) {
  if (!(r > 0.0)) throw PreconditionError("dirichlet disc: r must be > 0");
  if (resolution < 4) throw PreconditionError("dirichlet disc: resolution too small");
  const double h = 2.0 * r / resolution;
  const int side = resolution + 1;
  auto coord = [&](int i) { return -r + i * h; };
  std::vector<int> id(static_cast<std::size_t>(side) * side, -1);
  int count = 0;
  const double margin = 1e-9 * h;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const double x = coord(i), y = coord(j);
      if (std::hypot(x, y) < r - margin) id[i * side + j] = count++;
    }
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const int me = id[i * side + j];
      if (me < 0) continue;
      const double x = coord(i), y = coord(j);
      // Arms: +x, -x, +y, -y.
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      double arm[4];
      int nb[4];
      for (int a = 0; a < 4; ++a) {
        const int ii = i + di[a], jj = j + dj[a];
        const bool inside = ii >= 0 && ii < side && jj >= 0 && jj < side && id[ii * side + jj] >= 0;
        nb[a] = inside ? id[ii * side + jj] : -1;
        if (inside) {
          arm[a] = h;
        } else {
          const double along = a < 2 ? x * di[a] : y * dj[a];
          const double across = a < 2 ? y : x;
          arm[a] = std::max(std::sqrt(std::max(0.0, r * r - across * across)) - along, 1e-8 * h);
        }
      }
      for (int axis = 0; axis < 2; ++axis) {
        const double hp = arm[2 * axis], hm = arm[2 * axis + 1];
        t.emplace_back(me, me, 2.0 / (hp * hm));
        if (nb[2 * axis] >= 0) t.emplace_back(me, nb[2 * axis], -2.0 / (hp * (hp + hm)));
        if (nb[2 * axis + 1] >= 0) t.emplace_back(me, nb[2 * axis + 1], -2.0 / (hm * (hp + hm)));
      }
    }
  }
  Eigen::SparseMatrix<double> a(count, count);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw ConvergenceError("dirichlet disc: LU failed");
  Eigen::VectorXd x = Eigen::VectorXd::Ones(count);
  x.normalize();
  DirichletDisc out;
  out.radius = r;
  out.resolution = resolution;
  out.unknowns = count;
  double lam = 0.0;
  for (int it = 1; it <= 500; ++it) {
    Eigen::VectorXd y = lu.solve(x);
    const double next = x.dot(x) / x.dot(y);
    x = y.normalized();
    out.iterations = it;
    if (it > 1 && std::abs(next - lam) <= 1e-13 * std::abs(next)) {
      lam = next;
      break;
    }
    lam = next;
  }
  out.lambda0 = lam;
  return out;
}

// Geodesic ball of a flat 2-torus: a Euclidean disc as long as r < inj.
inline DirichletDisc dirichlet_lambda0_ball(const FlatTorus& torus, double r, int resolution) {
  validate_model(torus);
  if (torus.periods.size() != 2) throw PreconditionError("dirichlet ball: needs a flat 2-torus");
  if (!(r < model_inj(torus))) throw DomainError("dirichlet ball: r must be below the injectivity radius");
  return dirichlet_lambda0_disc(r, resolution);
}

// lambda_0 r^{2m+2} / Vol(B)^2.
inline double croke_ratio(double lambda0, double r, int m, double ball_volume) {
  if (!(lambda0 > 0 && r > 0 && ball_volume > 0)) throw DomainError("croke_ratio: inputs must be positive");
  return lambda0 * std::pow(r, 2 * m + 2) / (ball_volume * ball_volume);
}

}  // namespace specgeom

#endif  // SPECGEOM_BOUNDS_HPP_
