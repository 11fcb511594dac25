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

// Lipschitz cutoff functions built from distances: annulus cutoffs, set
// neighbourhood cutoffs, and their pullbacks to submanifold samples.

#ifndef SPECGEOM_CUTOFF_HPP_
#define SPECGEOM_CUTOFF_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "specgeom/error.hpp"
#include "specgeom/metric.hpp"
#include "specgeom/metric_space.hpp"
#include "specgeom/rng.hpp"

namespace specgeom {

enum class CutoffKind { annulus, neighborhood };

// 1 on [inner, outer), linear ramps on [inner/2, inner) and [outer, 2 outer),
// 0 elsewhere. inner = 0 drops the inner ramp.
inline double annulus_profile(double d, double inner, double outer) {
  if (d >= 2.0 * outer) return 0.0;
  if (d >= outer) return 2.0 - d / outer;
  if (d >= inner) return 1.0;
  if (d >= inner / 2.0) return 2.0 * d / inner - 1.0;
  return 0.0;
}

inline double annulus_slope(double d, double inner, double outer) {
  if (d >= outer && d < 2.0 * outer) return 1.0 / outer;
  if (inner > 0.0 && d >= inner / 2.0 && d < inner) return 2.0 / inner;
  return 0.0;
}

inline double neighborhood_profile(double dist, double r0) { return std::max(0.0, 1.0 - dist / r0); }

struct CutoffFunction {
  CutoffKind kind = CutoffKind::annulus;
  double inner = 0.0;
  double outer = 0.0;
  double r0 = 0.0;
  double lipschitz = 0.0;
  std::vector<double> values;  // on the evaluation space
  std::vector<double> slopes;  // ramp slope at each point, 0 off the ramps
  std::optional<Metric> ambient;
  std::vector<Coords> anchors;  // annulus: the centre; neighbourhood: the set A

  // Value at an arbitrary ambient point (needs coordinate anchors).
  double value_at(std::span<const double> x) const {
    if (!ambient) throw PreconditionError("cutoff has no ambient coordinates");
    if (kind == CutoffKind::annulus) return annulus_profile(metric_distance(*ambient, anchors[0], x), inner, outer);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : anchors) best = std::min(best, metric_distance(*ambient, a, x));
    return neighborhood_profile(best, r0);
  }

  PointSet support() const {
    PointSet s;
    for (PointId i = 0; i < values.size(); ++i)
      if (values[i] > 0.0) s.push_back(i);
    return s;
  }
};

inline double annulus_lipschitz(double inner, double outer) {
  return inner > 0.0 ? std::max(2.0 / inner, 1.0 / outer) : 1.0 / outer;
}

inline CutoffFunction annulus_cutoff(const FiniteMetricMeasureSpace& space, PointId center,
                                     double inner, double outer) {
  if (!(inner >= 0.0 && outer > inner)) throw PreconditionError("annulus_cutoff: need 0 <= r < R");
  space.check_point(center);
  CutoffFunction u;
  u.kind = CutoffKind::annulus;
  u.inner = inner;
  u.outer = outer;
  u.lipschitz = annulus_lipschitz(inner, outer);
  for (PointId x = 0; x < space.size(); ++x) {
    const double d = space.distance(center, x);
    u.values.push_back(annulus_profile(d, inner, outer));
    u.slopes.push_back(annulus_slope(d, inner, outer));
  }
  if (space.has_coordinates()) {
    u.ambient = space.metric();
    u.anchors = {space.point(center)};
  }
  return u;
}

inline CutoffFunction neighborhood_cutoff(const FiniteMetricMeasureSpace& space, const PointSet& set,
                                          double r0) {
  if (set.empty()) throw PreconditionError("neighborhood_cutoff: empty set");
  if (!(r0 > 0.0)) throw PreconditionError("neighborhood_cutoff: r0 must be > 0");
  CutoffFunction u;
  u.kind = CutoffKind::neighborhood;
  u.r0 = r0;
  u.lipschitz = 1.0 / r0;
  for (PointId x = 0; x < space.size(); ++x) {
    const double d = dist_to_set(space, x, set);
    u.values.push_back(neighborhood_profile(d, r0));
    u.slopes.push_back(d > 0.0 && d < r0 ? 1.0 / r0 : 0.0);
  }
  if (space.has_coordinates()) {
    u.ambient = space.metric();
    for (PointId a : set) u.anchors.push_back(space.point(a));
  }
  return u;
}

// u composed with the inclusion: the same profile evaluated with ambient
// distances at the submanifold sample points.
inline CutoffFunction pullback_cutoff(const CutoffFunction& u,
                                      const FiniteMetricMeasureSpace& restricted) {
  if (!u.ambient || !restricted.has_coordinates() || !(*restricted.metric() == *u.ambient)) {
    throw PreconditionError("pullback_cutoff: mismatched ambient");
  }
  CutoffFunction out = u;
  out.values.clear();
  out.slopes.clear();
  for (PointId x = 0; x < restricted.size(); ++x) {
    const auto& p = restricted.point(x);
    double d;
    if (u.kind == CutoffKind::annulus) {
      d = metric_distance(*u.ambient, u.anchors[0], p);
      out.values.push_back(annulus_profile(d, u.inner, u.outer));
      out.slopes.push_back(annulus_slope(d, u.inner, u.outer));
    } else {
      d = std::numeric_limits<double>::infinity();
      for (const auto& a : u.anchors) d = std::min(d, metric_distance(*u.ambient, a, p));
      out.values.push_back(neighborhood_profile(d, u.r0));
      out.slopes.push_back(d > 0.0 && d < u.r0 ? 1.0 / u.r0 : 0.0);
    }
  }
  return out;
}

struct LipschitzCertificate {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  // max |u(x)-u(y)| / (L d(x,y)) over pairs with d > 0
};

inline LipschitzCertificate certify_lipschitz(const FiniteMetricMeasureSpace& space,
                                              const CutoffFunction& u, std::size_t pairs,
                                              std::uint64_t seed) {
  if (u.values.size() != space.size()) throw PreconditionError("certify_lipschitz: size mismatch");
  auto rng = make_rng(seed, 0x11);
  LipschitzCertificate c;
  const std::size_t n = space.size();
  for (; c.pairs < pairs; ++c.pairs) {
    const PointId x = rng() % n, y = rng() % n;
    const double diff = std::abs(u.values[x] - u.values[y]);
    const double allow = u.lipschitz * space.distance(x, y);
    if (diff > allow) ++c.violations;
    if (allow > 0.0) c.worst_ratio = std::max(c.worst_ratio, diff / allow);
  }
  return c;
}

// Energy surrogate sum_x w_x slope(x)^p: the ramp-bound estimate of the p-energy
// on scattered samples.
inline double ramp_energy(const FiniteMetricMeasureSpace& space, const CutoffFunction& u, double p) {
  if (!(p >= 1.0)) throw PreconditionError("ramp_energy: p must be >= 1");
  if (u.slopes.size() != space.size()) throw PreconditionError("ramp_energy: size mismatch");
  double e = 0.0;
  for (PointId x = 0; x < space.size(); ++x)
    if (u.slopes[x] > 0.0) e += space.weight(x) * std::pow(u.slopes[x], p);
  return e;
}

inline double l2_mass(const FiniteMetricMeasureSpace& space, const CutoffFunction& u) {
  double m = 0.0;
  for (PointId x = 0; x < space.size(); ++x) m += space.weight(x) * u.values[x] * u.values[x];
  return m;
}

}  // namespace specgeom

#endif  // SPECGEOM_CUTOFF_HPP_
