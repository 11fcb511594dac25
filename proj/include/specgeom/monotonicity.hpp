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

// Extrinsic ball volumes of submanifolds, normalized monotonicity checks and
// density at infinity.

#ifndef SPECGEOM_MONOTONICITY_HPP_
#define SPECGEOM_MONOTONICITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "specgeom/comparison.hpp"
#include "specgeom/manifolds.hpp"
#include "specgeom/rng.hpp"
#include "specgeom/sampling.hpp"

namespace specgeom {

struct VolumeEstimate {
  double value = 0.0;
  double error = 0.0;  // one standard error
};

struct SeriesPoint {
  double r = 0.0;
  double volume = 0.0;
  double error = 0.0;
};

// Mass of the sample points at distance < r from p, for each radius, with
// the binomial standard error (floored at one count so that q in {0, 1}
// still carries an error, except for an empty intersection).
inline std::vector<VolumeEstimate> counted_volumes(const Metric& metric, std::span<const double> p,
                                                   const std::vector<Coords>& points,
                                                   double region_volume,
                                                   std::span<const double> radii) {
  std::vector<double> d;
  d.reserve(points.size());
  for (const auto& x : points) d.push_back(metric_distance(metric, p, x));
  std::sort(d.begin(), d.end());
  const double n = static_cast<double>(points.size());
  std::vector<VolumeEstimate> out;
  for (double r : radii) {
    const auto hits = static_cast<double>(std::lower_bound(d.begin(), d.end(), r) - d.begin());
    const double q = hits / n;
    VolumeEstimate e;
    e.value = region_volume * q;
    e.error = hits > 0 ? region_volume * std::sqrt((q * (1.0 - q) + 1.0 / n) / n) : 0.0;
    out.push_back(e);
  }
  return out;
}

inline std::vector<SeriesPoint> extrinsic_volume_series(const SubmanifoldModel& sub,
                                                        std::span<const double> p,
                                                        std::span<const double> radii,
                                                        std::size_t n_samples, std::uint64_t seed) {
  if (radii.empty()) return {};
  for (double r : radii)
    if (!(r > 0.0)) throw PreconditionError("extrinsic volume: radii must be > 0");
  auto rng = make_rng(seed, 0xeb);
  const double extent = *std::max_element(radii.begin(), radii.end());
  const auto region = random_submanifold_points(sub, n_samples, rng, p, extent);
  const auto est = counted_volumes(ambient_metric(sub), p, region.points, region.region_volume, radii);
  std::vector<SeriesPoint> out;
  for (std::size_t i = 0; i < radii.size(); ++i) out.push_back({radii[i], est[i].value, est[i].error});
  return out;
}

// Monte-Carlo estimate of Vol(B(p, r) cap Sigma).
inline VolumeEstimate extrinsic_ball_volume(const SubmanifoldModel& sub, std::span<const double> p,
                                            double r, std::size_t n_samples, std::uint64_t seed) {
  const double radii[] = {r};
  const auto s = extrinsic_volume_series(sub, p, radii, n_samples, seed);
  return {s[0].volume, s[0].error};
}

// Monte-Carlo estimate of geodesic ball volumes in a model manifold.
inline std::vector<SeriesPoint> model_ball_volume_series(const ManifoldModel& model,
                                                         std::span<const double> p,
                                                         std::span<const double> radii,
                                                         std::size_t n_samples,
                                                         std::uint64_t seed) {
  auto rng = make_rng(seed, 0xbb);
  const auto pts = random_model_points(model, n_samples, rng);
  const auto est = counted_volumes(model_metric(model), p, pts, model_volume(model), radii);
  std::vector<SeriesPoint> out;
  for (std::size_t i = 0; i < radii.size(); ++i) out.push_back({radii[i], est[i].value, est[i].error});
  return out;
}

enum class NormalizerKind { model_volume, sn_power };

struct Normalizer {
  NormalizerKind kind = NormalizerKind::model_volume;
  double delta = 0.0;
  int dim = 1;

  double operator()(double r) const {
    return kind == NormalizerKind::model_volume ? model_ball_volume(delta, dim, r)
                                                : std::pow(sn_delta(delta, r), dim);
  }
};

// The normalization matching the curvature sign: V^n_delta for delta <= 0,
// sn_delta^n for delta > 0.
inline Normalizer normalizer_for(double delta, int dim) {
  return {delta > 0.0 && !is_flat(delta) ? NormalizerKind::sn_power : NormalizerKind::model_volume,
          delta, dim};
}

struct MonotonicityVerdict {
  bool pass = true;
  double worst_drop = 0.0;  // largest ratio decrease beyond its allowance (<= 0 when passing)
  std::vector<double> ratios;
  std::vector<double> ratio_errors;
  std::vector<bool> steps;  // steps[i]: no excess drop from i-1 to i (steps[0] = true)
};

inline MonotonicityVerdict monotonicity_check(std::span<const SeriesPoint> series,
                                              const Normalizer& norm, double tol) {
  if (series.size() < 2) throw PreconditionError("monotonicity_check: need at least two points");
  MonotonicityVerdict v;
  v.worst_drop = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    if (!(s.r > 0.0) || !(s.error >= 0.0) || !std::isfinite(s.volume)) {
      throw PreconditionError("monotonicity_check: malformed series point");
    }
    if (i > 0 && !(s.r > series[i - 1].r)) {
      throw PreconditionError("monotonicity_check: radii must increase strictly");
    }
    const double z = norm(s.r);
    v.ratios.push_back(s.volume / z);
    v.ratio_errors.push_back(s.error / z);
  }
  v.steps.push_back(true);
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double drop = v.ratios[i - 1] - v.ratios[i];
    const double allowance = std::max(tol, 3.0 * std::hypot(v.ratio_errors[i - 1], v.ratio_errors[i]));
    v.worst_drop = std::max(v.worst_drop, drop - allowance);
    v.steps.push_back(drop <= allowance);
    if (drop > allowance) v.pass = false;
  }
  return v;
}

struct DensityReport {
  double theta = 0.0;
  double theta_error = 0.0;
  bool stable = true;     // ratio rose by <= 1% over the last octave
  bool bounds_hold = true;
  std::vector<SeriesPoint> series;
};

// theta = V(r_max) / (omega_n r_max^n), with the two-sided density bounds
// omega_n r^n <= V(r) <= omega_n theta r^n checked on a geometric radius grid.
inline DensityReport density_at_infinity(const SubmanifoldModel& sub, double r_max,
                                         std::size_t n_samples, std::uint64_t seed,
                                         int octaves = 8, int per_octave = 4) {
  validate_submanifold(sub);
  if (is_closed(sub)) throw PreconditionError("density_at_infinity: needs a complete Euclidean variant");
  if (!(r_max > 0.0)) throw PreconditionError("density_at_infinity: r_max must be > 0");
  const int n = submanifold_dim(sub);
  std::vector<double> radii;
  const int steps = octaves * per_octave;
  for (int i = steps; i >= 0; --i) radii.push_back(r_max * std::pow(2.0, -double(i) / per_octave));
  const Coords p = reference_point(sub);
  DensityReport rep;
  rep.series = extrinsic_volume_series(sub, p, radii, n_samples, seed);
  const double wn = unit_ball_volume(n);
  const auto& last = rep.series.back();
  rep.theta = last.volume / (wn * std::pow(r_max, n));
  rep.theta_error = last.error / (wn * std::pow(r_max, n));
  const auto& prev = rep.series[rep.series.size() - 1 - per_octave];
  const double prev_ratio = prev.volume / (wn * std::pow(prev.r, n));
  rep.stable = rep.theta <= 1.01 * prev_ratio;
  for (const auto& s : rep.series) {
    const double base = wn * std::pow(s.r, n);
    // Radii holding fewer than ~100 samples (relative error > 10%) are unresolved.
    if (!(s.error <= 0.1 * s.volume)) continue;
    if (s.volume + 3.0 * s.error < base) rep.bounds_hold = false;
    if (s.volume - 3.0 * s.error > rep.theta * base + 3.0 * rep.theta_error * base) rep.bounds_hold = false;
  }
  return rep;
}

}  // namespace specgeom

#endif  // SPECGEOM_MONOTONICITY_HPP_
