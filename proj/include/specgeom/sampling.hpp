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

// Deterministic samplers for the model manifolds and submanifolds.

#ifndef SPECGEOM_SAMPLING_HPP_
#define SPECGEOM_SAMPLING_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "specgeom/manifolds.hpp"
#include "specgeom/metric_space.hpp"
#include "specgeom/rng.hpp"

namespace specgeom {

namespace detail {

inline Coords gaussian_direction(Rng& rng, std::size_t dim, std::size_t total_dim, double radius) {
  Coords x(total_dim, 0.0);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      x[j] = standard_normal(rng);
      n2 += x[j] * x[j];
    }
  } while (n2 < 1e-300);
  const double s = radius / std::sqrt(n2);
  for (std::size_t j = 0; j < dim; ++j) x[j] *= s;
  return x;
}

// Uniform point of the n-ball of radius T, padded with zeros to total_dim.
inline Coords uniform_in_ball(Rng& rng, int n, std::size_t total_dim, double radius) {
  Coords x = gaussian_direction(rng, static_cast<std::size_t>(n), total_dim, 1.0);
  const double s = radius * std::pow(uniform01(rng), 1.0 / n);
  for (int j = 0; j < n; ++j) x[j] *= s;
  return x;
}

// v + sinh(2v)/2, the area primitive of the catenoid per unit a^2 and angle.
inline double catenoid_primitive(double v) { return v + 0.5 * std::sinh(2.0 * v); }

inline double catenoid_inverse_primitive(double target, double vmax) {
  double lo = -vmax, hi = vmax;
  double v = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double f = catenoid_primitive(v) - target;
    if (f > 0) {
      hi = v;
    } else {
      lo = v;
    }
    const double step = f / (2.0 * std::cosh(v) * std::cosh(v));
    double next = v - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - v) <= 1e-15 * std::max(1.0, std::abs(v))) return next;
    v = next;
  }
  return v;
}

}  // namespace detail

inline std::vector<Coords> torus_grid_points(const FlatTorus& torus, std::span<const int> sides) {
  const std::size_t m = torus.periods.size();
  std::size_t count = 1;
  for (int s : sides) count *= static_cast<std::size_t>(s);
  std::vector<Coords> pts;
  pts.reserve(count);
  std::vector<int> idx(m, 0);
  for (std::size_t c = 0; c < count; ++c) {
    Coords x(m);
    for (std::size_t j = 0; j < m; ++j) x[j] = torus.periods[j] * idx[j] / sides[j];
    pts.push_back(std::move(x));
    for (std::size_t j = m; j-- > 0;) {
      if (++idx[j] < sides[j]) break;
      idx[j] = 0;
    }
  }
  return pts;
}

// Tori: uniform product grid with round(n^{1/m}) nodes per side. Spheres:
// normalized Gaussian draws. Weights are equal and sum to the volume.
inline SubmanifoldSample sample_model(const ManifoldModel& model, std::size_t n,
                                      std::uint64_t seed) {
  if (n < 1) throw PreconditionError("sample_model: n must be >= 1");
  validate_model(model);
  SubmanifoldSample out;
  const double vol = model_volume(model);
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    const int m = static_cast<int>(t->periods.size());
    const int side = std::max(1, static_cast<int>(std::lround(std::pow(double(n), 1.0 / m))));
    const std::vector<int> sides(static_cast<std::size_t>(m), side);
    out.ambient_points = torus_grid_points(*t, sides);
  } else {
    const auto& s = std::get<RoundSphere>(model);
    auto rng = make_rng(seed, 0x5e);
    const auto d = static_cast<std::size_t>(s.m + 1);
    for (std::size_t i = 0; i < n; ++i) out.ambient_points.push_back(detail::gaussian_direction(rng, d, d, s.radius));
  }
  out.weights.assign(out.ambient_points.size(), vol / static_cast<double>(out.ambient_points.size()));
  return out;
}

// I.i.d. volume-uniform points of a model.
inline std::vector<Coords> random_model_points(const ManifoldModel& model, std::size_t n, Rng& rng) {
  std::vector<Coords> pts;
  pts.reserve(n);
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    for (std::size_t i = 0; i < n; ++i) {
      Coords x(t->periods.size());
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = t->periods[j] * uniform01(rng);
      pts.push_back(std::move(x));
    }
  } else {
    const auto& s = std::get<RoundSphere>(model);
    const auto d = static_cast<std::size_t>(s.m + 1);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(detail::gaussian_direction(rng, d, d, s.radius));
  }
  return pts;
}

// A volume-uniform sample of a region of Sigma: all of Sigma for the closed
// variants, the part that can meet B(p, extent) for the complete ones.
struct RegionSample {
  std::vector<Coords> points;
  double region_volume = 0.0;
};

inline double catenoid_vmax(double a, double ref_norm, double extent) {
  return std::acosh(std::max(1.0, (ref_norm + extent) / a));
}

inline RegionSample random_submanifold_points(const SubmanifoldModel& sub, std::size_t n,
                                              Rng& rng, std::span<const double> p = {},
                                              double extent = 0.0) {
  validate_submanifold(sub);
  RegionSample out;
  out.points.reserve(n);
  constexpr double pi = std::numbers::pi;
  if (const auto* s = std::get_if<GreatSubsphere>(&sub)) {
    for (std::size_t i = 0; i < n; ++i)
      out.points.push_back(detail::gaussian_direction(rng, s->n + 1, s->m + 1, s->radius));
    out.region_volume = submanifold_volume(sub);
  } else if (const auto* c = std::get_if<CliffordTorus>(&sub)) {
    const double l = clifford_intrinsic_torus(c->radius).periods[0];
    for (std::size_t i = 0; i < n; ++i) {
      const double s = l * uniform01(rng);
      out.points.push_back(clifford_embed(c->radius, s, l * uniform01(rng)));
    }
    out.region_volume = submanifold_volume(sub);
  } else if (const auto* g = std::get_if<GreatCircle>(&sub)) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = 2 * pi * uniform01(rng);
      out.points.push_back({g->radius * std::cos(t), g->radius * std::sin(t), 0.0});
    }
    out.region_volume = submanifold_volume(sub);
  } else if (const auto* pl = std::get_if<AffinePlane>(&sub)) {
    if (!(extent > 0.0)) throw PreconditionError("affine plane sampling needs a positive extent");
    Coords centre(static_cast<std::size_t>(pl->m), 0.0);
    if (!p.empty()) {
      if (p.size() != centre.size()) throw DomainError("reference point has wrong dimension");
      for (std::size_t j = pl->n; j < p.size(); ++j)
        if (std::abs(p[j]) > kOnModelTol) throw DomainError("reference point is off the plane");
      std::copy(p.begin(), p.end(), centre.begin());
    }
    for (std::size_t i = 0; i < n; ++i) {
      Coords x = detail::uniform_in_ball(rng, pl->n, centre.size(), extent);
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += centre[j];
      out.points.push_back(std::move(x));
    }
    out.region_volume = unit_ball_volume(pl->n) * std::pow(extent, pl->n);
  } else {
    const auto& k = std::get<Catenoid>(sub);
    if (!(extent > 0.0)) throw PreconditionError("catenoid sampling needs a positive extent");
    double ref = k.a;
    if (!p.empty()) ref = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    const double vmax = catenoid_vmax(k.a, ref, extent);
    const double gmax = detail::catenoid_primitive(vmax);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = 2 * pi * uniform01(rng);
      const double v = detail::catenoid_inverse_primitive(gmax * (2.0 * uniform01(rng) - 1.0), vmax);
      out.points.push_back(catenoid_embed(k.a, u, v));
    }
    out.region_volume = 2.0 * pi * k.a * k.a * gmax;
  }
  return out;
}

// Weighted sample of Sigma. Great circles and Clifford tori use product-grid
// quadrature (round(n^{1/dim}) nodes per side); the others volume-uniform
// random points. Weights sum to the (region) volume.
inline SubmanifoldSample sample_submanifold(const SubmanifoldModel& sub, std::size_t n,
                                            std::uint64_t seed, double extent = 0.0) {
  if (n < 1) throw PreconditionError("sample_submanifold: n must be >= 1");
  validate_submanifold(sub);
  SubmanifoldSample out;
  double vol = 0.0;
  if (const auto* g = std::get_if<GreatCircle>(&sub)) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = 2 * std::numbers::pi * double(i) / double(n);
      out.ambient_points.push_back({g->radius * std::cos(t), g->radius * std::sin(t), 0.0});
    }
    vol = submanifold_volume(sub);
  } else if (const auto* c = std::get_if<CliffordTorus>(&sub)) {
    const auto torus = clifford_intrinsic_torus(c->radius);
    const int side = std::max(1, static_cast<int>(std::lround(std::sqrt(double(n)))));
    const std::vector<int> sides{side, side};
    for (const auto& st : torus_grid_points(torus, sides))
      out.ambient_points.push_back(clifford_embed(c->radius, st[0], st[1]));
    vol = submanifold_volume(sub);
  } else {
    auto rng = make_rng(seed, 0x5b);
    auto region = random_submanifold_points(sub, n, rng, {}, extent);
    out.ambient_points = std::move(region.points);
    vol = region.region_volume;
  }
  out.weights.assign(out.ambient_points.size(), vol / static_cast<double>(out.ambient_points.size()));
  return out;
}

struct ConvexityProbe {
  std::size_t pairs = 0;
  std::size_t violations = 0;
};

// Samples pairs inside balls B(p, radius) and checks that the midpoint of
// the minimizing geodesic stays inside.
inline ConvexityProbe convexity_probe(const ManifoldModel& model, double radius,
                                      std::size_t pairs, std::uint64_t seed) {
  validate_model(model);
  auto rng = make_rng(seed, 0xc0);
  const Metric metric = model_metric(model);
  ConvexityProbe out;
  auto midpoint = [&](const Coords& x, const Coords& y) {
    Coords mid(x.size());
    if (const auto* t = std::get_if<FlatTorus>(&model)) {
      for (std::size_t j = 0; j < x.size(); ++j) mid[j] = x[j] + 0.5 * torus_wrap(y[j] - x[j], t->periods[j]);
    } else {
      const double r = std::get<RoundSphere>(model).radius;
      double n2 = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        mid[j] = x[j] + y[j];
        n2 += mid[j] * mid[j];
      }
      for (double& v : mid) v *= r / std::sqrt(n2);
    }
    return mid;
  };
  while (out.pairs < pairs) {
    const Coords p = random_model_points(model, 1, rng)[0];
    std::vector<Coords> inside;
    while (inside.size() < 2) {
      Coords x = random_model_points(model, 1, rng)[0];
      if (metric_distance(metric, p, x) < radius) inside.push_back(std::move(x));
    }
    const Coords mid = midpoint(inside[0], inside[1]);
    if (!(metric_distance(metric, p, mid) < radius)) ++out.violations;
    ++out.pairs;
  }
  return out;
}

}  // namespace specgeom

#endif  // SPECGEOM_SAMPLING_HPP_
