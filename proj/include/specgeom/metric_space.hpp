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

// Finite pseudo-metric measure spaces and the ball / annulus / packing
// primitives the decomposition algorithms run on.

#ifndef SPECGEOM_METRIC_SPACE_HPP_
#define SPECGEOM_METRIC_SPACE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specgeom/error.hpp"
#include "specgeom/metric.hpp"
#include "specgeom/rng.hpp"

namespace specgeom {

using PointId = std::size_t;
using PointSet = std::vector<PointId>;  // sorted ascending, no duplicates

inline constexpr std::size_t kDenseCacheLimit = 4096;

class FiniteMetricMeasureSpace {
 public:
  using Oracle = std::function<double(PointId, PointId)>;

  static FiniteMetricMeasureSpace from_coordinates(std::vector<Coords> points,
                                                   std::vector<double> weights, Metric metric) {
    if (points.size() != weights.size()) {
      throw PreconditionError("space: points and weights differ in length");
    }
    auto st = std::make_shared<Storage>();
    st->n = points.size();
    if (!points.empty()) {
      const std::size_t d = points.front().size();
      for (const auto& p : points) {
        if (p.size() != d) throw PreconditionError("space: ragged coordinates");
      }
    }
    st->coords = std::move(points);
    st->metric = std::move(metric);
    st->oracle = [raw = st.get()](PointId i, PointId j) {
      return metric_distance(*raw->metric, raw->coords[i], raw->coords[j]);
    };
    return finish(std::move(st), std::move(weights));
  }

  // Row-major dense matrix; the diagonal must be zero.
  static FiniteMetricMeasureSpace from_matrix(std::vector<double> matrix,
                                              std::vector<double> weights) {
    const std::size_t n = weights.size();
    if (matrix.size() != n * n) throw PreconditionError("space: matrix is not n x n");
    auto st = std::make_shared<Storage>();
    st->n = n;
    st->dense = std::move(matrix);
    return finish(std::move(st), std::move(weights));
  }

  static FiniteMetricMeasureSpace from_oracle(std::size_t n, Oracle oracle,
                                              std::vector<double> weights) {
    if (weights.size() != n) throw PreconditionError("space: weights length mismatch");
    auto st = std::make_shared<Storage>();
    st->n = n;
    st->oracle = std::move(oracle);
    return finish(std::move(st), std::move(weights));
  }

  std::size_t size() const { return storage_->n; }
  double weight(PointId i) const { return weights_->at(i); }
  std::span<const double> weights() const { return *weights_; }
  double total_mass() const { return total_; }

  double distance(PointId i, PointId j) const {
    const auto& st = *storage_;
    if (!st.dense.empty()) return st.dense[i * st.n + j];
    return st.oracle(i, j);
  }

  bool has_coordinates() const { return !storage_->coords.empty() && storage_->metric.has_value(); }
  const Coords& point(PointId i) const { return storage_->coords.at(i); }
  const std::vector<Coords>& points() const { return storage_->coords; }
  const std::optional<Metric>& metric() const { return storage_->metric; }
  std::string metric_name() const {
    return storage_->metric ? metric_tag(*storage_->metric) : std::string("precomputed");
  }

  // Same distances, different measure.
  FiniteMetricMeasureSpace with_weights(std::vector<double> weights) const {
    if (weights.size() != size()) throw PreconditionError("with_weights: length mismatch");
    return FiniteMetricMeasureSpace(storage_, std::move(weights));
  }

  void check_point(PointId p) const {
    if (p >= size()) throw PreconditionError("invalid point id " + std::to_string(p));
  }

 private:
  struct Storage {
    std::size_t n = 0;
    std::vector<Coords> coords;
    std::optional<Metric> metric;
    std::vector<double> dense;
    Oracle oracle;
  };

  FiniteMetricMeasureSpace(std::shared_ptr<const Storage> st, std::vector<double> weights)
      : storage_(std::move(st)),
        weights_(std::make_shared<const std::vector<double>>(std::move(weights))) {
    total_ = 0.0;
    for (double w : *weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw PreconditionError("space: weights must be finite and >= 0");
      total_ += w;
    }
  }

  static FiniteMetricMeasureSpace finish(std::shared_ptr<Storage> st, std::vector<double> weights) {
    if (st->dense.empty() && st->n <= kDenseCacheLimit && st->n > 0) {
      st->dense.assign(st->n * st->n, 0.0);
      for (std::size_t i = 0; i < st->n; ++i) {
        for (std::size_t j = i + 1; j < st->n; ++j) {
          const double d = st->oracle(i, j);
          st->dense[i * st->n + j] = d;
          st->dense[j * st->n + i] = d;
        }
      }
    }
    return FiniteMetricMeasureSpace(std::move(st), std::move(weights));
  }

  std::shared_ptr<const Storage> storage_;
  std::shared_ptr<const std::vector<double>> weights_;
  double total_ = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> problems;
  double worst_triangle_excess = 0.0;
};

// Symmetry and zero diagonal exactly (all pairs when the space is small,
// sampled otherwise); triangle inequality on sampled triples.
inline ValidationReport validate_space(const FiniteMetricMeasureSpace& space,
                                       std::uint64_t seed = 0, int triples = 1000,
                                       double tol = 1e-9) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    if (rep.problems.size() < 16) rep.problems.push_back(std::move(msg));
  };
  const std::size_t n = space.size();
  if (n == 0) {
    fail("space is empty");
    return rep;
  }
  if (!(space.total_mass() > 0.0) || !std::isfinite(space.total_mass())) {
    fail("total mass must be finite and positive");
  }
  auto rng = make_rng(seed, 0x5a11);
  auto pick = [&]() { return static_cast<PointId>(rng() % n); };
  auto check_pair = [&](PointId i, PointId j) {
    const double dij = space.distance(i, j);
    if (!(dij >= 0.0)) fail("negative or NaN distance");
    if (dij != space.distance(j, i)) fail("asymmetric distance");
  };
  for (std::size_t i = 0; i < std::min<std::size_t>(n, 512); ++i) {
    if (space.distance(i, i) != 0.0) fail("nonzero diagonal at " + std::to_string(i));
  }
  if (n <= 512) {
    for (PointId i = 0; i < n; ++i)
      for (PointId j = i + 1; j < n; ++j) check_pair(i, j);
  } else {
    for (int t = 0; t < 20000; ++t) check_pair(pick(), pick());
  }
  for (int t = 0; t < triples; ++t) {
    const PointId a = pick(), b = pick(), c = pick();
    const double excess = space.distance(a, c) - space.distance(a, b) - space.distance(b, c);
    rep.worst_triangle_excess = std::max(rep.worst_triangle_excess, excess);
    if (excess > tol) fail("triangle inequality violated");
  }
  return rep;
}

struct Annulus {
  PointId center = 0;
  double inner = 0.0;
  double outer = 1.0;

  void validate() const {
    if (!(inner >= 0.0 && inner < outer && std::isfinite(outer))) {
      throw PreconditionError("annulus requires 0 <= inner < outer < inf");
    }
  }
  Annulus doubled() const { return {center, inner / 2.0, 2.0 * outer}; }
};

inline double set_mass(std::span<const double> weights, const PointSet& set) {
  double s = 0.0;
  for (PointId i : set) s += weights[i];
  return s;
}

inline double set_mass(const FiniteMetricMeasureSpace& space, const PointSet& set) {
  return set_mass(space.weights(), set);
}

// Open ball {x : d(p, x) < r}.
inline PointSet ball_members(const FiniteMetricMeasureSpace& space, PointId p, double r) {
  space.check_point(p);
  if (!(r >= 0.0)) throw PreconditionError("ball radius must be >= 0");
  PointSet out;
  for (PointId x = 0; x < space.size(); ++x) {
    if (space.distance(p, x) < r) out.push_back(x);
  }
  return out;
}

// {x : inner <= d(x, a) < outer}, or the doubled annulus.
inline PointSet annulus_members(const FiniteMetricMeasureSpace& space, const Annulus& annulus,
                                bool doubled = false) {
  annulus.validate();
  space.check_point(annulus.center);
  const Annulus a = doubled ? annulus.doubled() : annulus;
  PointSet out;
  for (PointId x = 0; x < space.size(); ++x) {
    const double d = space.distance(a.center, x);
    if (d >= a.inner && d < a.outer) out.push_back(x);
  }
  return out;
}

inline double dist_to_set(const FiniteMetricMeasureSpace& space, PointId x, const PointSet& set) {
  if (set.empty()) throw PreconditionError("dist_to_set: empty set");
  space.check_point(x);
  double best = std::numeric_limits<double>::infinity();
  for (PointId a : set) best = std::min(best, space.distance(x, a));
  return best;
}

// Closed neighbourhood {x : dist(x, A) <= r0}.
inline PointSet r_neighborhood(const FiniteMetricMeasureSpace& space, const PointSet& set,
                               double r0) {
  if (set.empty()) throw PreconditionError("r_neighborhood: empty set");
  PointSet out;
  for (PointId x = 0; x < space.size(); ++x) {
    for (PointId a : set) {
      if (space.distance(x, a) <= r0) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

// Greedy maximal family of centres in B(p, r), pairwise at distance >= r/rho
// (so the r/(2 rho)-balls are disjoint), scanned in ascending id. Every point
// of B(p, r) then lies within r/rho of a centre.
inline PointSet maximal_packing_cover(const FiniteMetricMeasureSpace& space, PointId p, double r,
                                      double rho) {
  if (!(rho > 1.0)) throw PreconditionError("maximal_packing_cover: rho must be > 1");
  if (!(r > 0.0)) throw PreconditionError("maximal_packing_cover: r must be > 0");
  const double sep = r / rho;
  PointSet centers;
  for (PointId x : ball_members(space, p, r)) {
    bool free = true;
    for (PointId c : centers) {
      if (space.distance(x, c) < sep) {
        free = false;
        break;
      }
    }
    if (free) centers.push_back(x);
  }
  return centers;
}

// Points of a submanifold sample: ambient coordinates plus intrinsic volume
// weights (optionally already multiplied by a conformal factor).
struct SubmanifoldSample {
  std::vector<Coords> ambient_points;
  std::vector<double> weights;
};

// Pseudo-metric space on the sample with the ambient distance; the weights
// double as the push-forward of the sample measure.
inline FiniteMetricMeasureSpace restricted_space(const Metric& ambient,
                                                 const SubmanifoldSample& sample) {
  if (sample.ambient_points.empty()) throw PreconditionError("restricted_space: empty sample");
  return FiniteMetricMeasureSpace::from_coordinates(sample.ambient_points, sample.weights,
                                                    ambient);
}

}  // namespace specgeom

#endif  // SPECGEOM_METRIC_SPACE_HPP_
