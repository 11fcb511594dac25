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

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "specgeom/metric_space.hpp"
#include "specgeom/space_io.hpp"

namespace specgeom {
namespace {

constexpr double kPi = std::numbers::pi;

FiniteMetricMeasureSpace line_space() {
  std::vector<Coords> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({double(i)});
  return FiniteMetricMeasureSpace::from_coordinates(pts, std::vector<double>(5, 1.0),
                                                    EuclideanMetric{});
}

// Equispaced points on a circle of circumference 1 with the arc metric.
FiniteMetricMeasureSpace circle_space(int n) {
  std::vector<Coords> pts;
  for (int i = 0; i < n; ++i) pts.push_back({double(i) / n});
  return FiniteMetricMeasureSpace::from_coordinates(pts, std::vector<double>(n, 1.0 / n),
                                                    TorusMetric{{1.0}});
}

TEST(Metric, TorusAndSphereDistances) {
  const TorusMetric t{{2 * kPi, 2 * kPi}};
  EXPECT_NEAR(metric_distance(t, Coords{0, 0}, Coords{kPi, 0}), kPi, 1e-14);
  EXPECT_NEAR(metric_distance(t, Coords{0, 0}, Coords{1.5 * kPi, 0}), kPi / 2, 1e-14);
  const SphereMetric s{1.0};
  EXPECT_NEAR(metric_distance(s, Coords{0, 0, 1}, Coords{0, 0, -1}), kPi, 1e-15);
  EXPECT_NEAR(metric_distance(s, Coords{0, 0, 1}, Coords{1, 0, 0}), kPi / 2, 1e-15);
  EXPECT_THROW(metric_distance(t, Coords{0}, Coords{0, 0}), DomainError);
}

TEST(Metric, TagRoundTrip) {
  for (const Metric& m : {Metric{EuclideanMetric{}}, Metric{TorusMetric{{1.5, 2.25}}},
                          Metric{SphereMetric{3.0}}}) {
    EXPECT_EQ(parse_metric_tag(metric_tag(m)), m);
  }
  EXPECT_THROW(parse_metric_tag("hyperbolic"), ConfigError);
  EXPECT_THROW(parse_metric_tag("torus:1,x"), ConfigError);
  EXPECT_THROW(parse_metric_tag("sphere:-1"), ConfigError);
}

TEST(Space, ConstructionChecks) {
  EXPECT_THROW(FiniteMetricMeasureSpace::from_matrix({0, 1, 1}, {1, 1}), PreconditionError);
  EXPECT_THROW(FiniteMetricMeasureSpace::from_matrix({0, 1, 1, 0}, {1, -1}), PreconditionError);
  EXPECT_THROW(FiniteMetricMeasureSpace::from_coordinates({{0}, {1, 2}}, {1, 1}, EuclideanMetric{}),
               PreconditionError);
  auto s = FiniteMetricMeasureSpace::from_matrix({0, 0, 0, 0}, {1, 1});
  EXPECT_TRUE(validate_space(s).ok);  // pseudo-metric twins allowed
}

TEST(Space, ValidationFlagsViolations) {
  auto asym = FiniteMetricMeasureSpace::from_matrix({0, 1, 2, 0}, {1, 1});
  EXPECT_FALSE(validate_space(asym).ok);
  auto tri = FiniteMetricMeasureSpace::from_matrix({0, 1, 5, 1, 0, 1, 5, 1, 0}, {1, 1, 1});
  EXPECT_FALSE(validate_space(tri, 1, 2000).ok);
  auto zero = FiniteMetricMeasureSpace::from_matrix({0, 1, 1, 0}, {0, 0});
  EXPECT_FALSE(validate_space(zero).ok);
  EXPECT_TRUE(validate_space(circle_space(50)).ok);
}

TEST(Space, OnDemandDistancesAboveCacheLimit) {
  const std::size_t n = kDenseCacheLimit + 1;
  auto s = FiniteMetricMeasureSpace::from_oracle(
      n, [](PointId i, PointId j) { return std::abs(double(i) - double(j)); },
      std::vector<double>(n, 1.0));
  EXPECT_EQ(s.distance(3, 4000), 3997.0);
  EXPECT_TRUE(validate_space(s, 7).ok);
}

TEST(Balls, Examples) {
  const auto s = line_space();
  EXPECT_TRUE(ball_members(s, 2, 0.0).empty());
  EXPECT_EQ(ball_members(s, 2, 10.0), (PointSet{0, 1, 2, 3, 4}));
  EXPECT_EQ(ball_members(s, 2, 1.5), (PointSet{1, 2, 3}));
  EXPECT_EQ(ball_members(s, 2, 1.0), (PointSet{2}));
  EXPECT_THROW(ball_members(s, 5, 1.0), PreconditionError);
}

TEST(Balls, MonotoneInRadius) {
  const auto s = circle_space(40);
  for (PointId p : {0u, 7u, 39u}) {
    PointSet prev;
    for (double r = 0.0; r < 0.6; r += 0.013) {
      const auto b = ball_members(s, p, r);
      EXPECT_TRUE(std::includes(b.begin(), b.end(), prev.begin(), prev.end()));
      prev = b;
    }
  }
}

TEST(Annuli, Examples) {
  const auto s = line_space();
  EXPECT_EQ(annulus_members(s, {2, 1, 2}), (PointSet{1, 3}));
  EXPECT_EQ(annulus_members(s, {2, 1, 2}, true), (PointSet{0, 1, 3, 4}));
  EXPECT_EQ(annulus_members(s, {2, 0, 1.5}), ball_members(s, 2, 1.5));
  const Annulus a{0, 1, 2};
  EXPECT_DOUBLE_EQ(a.doubled().inner, 0.5);
  EXPECT_DOUBLE_EQ(a.doubled().outer, 4.0);
  EXPECT_THROW(annulus_members(s, {2, 2, 1}), PreconditionError);
}

TEST(Annuli, ContainedInDouble) {
  const auto s = circle_space(60);
  for (double inner : {0.0, 0.05, 0.1}) {
    for (double outer : {0.12, 0.2, 0.4}) {
      const auto a = annulus_members(s, {5, inner, outer});
      const auto d = annulus_members(s, {5, inner, outer}, true);
      EXPECT_TRUE(std::includes(d.begin(), d.end(), a.begin(), a.end()));
    }
  }
}

TEST(SetDistance, Examples) {
  const auto s = line_space();
  EXPECT_EQ(dist_to_set(s, 3, {1, 3}), 0.0);
  EXPECT_EQ(dist_to_set(s, 0, {3, 4}), 3.0);
  EXPECT_THROW(dist_to_set(s, 0, {}), PreconditionError);
  EXPECT_EQ(r_neighborhood(s, {3, 4}, 1.0), (PointSet{2, 3, 4}));
  auto twins = FiniteMetricMeasureSpace::from_matrix({0, 0, 1, 0, 0, 1, 1, 1, 0}, {1, 1, 1});
  EXPECT_EQ(r_neighborhood(twins, {0}, 0.0), (PointSet{0, 1}));
}

TEST(Packing, SingletonBall) {
  const auto s = line_space();
  EXPECT_EQ(maximal_packing_cover(s, 2, 0.5, 2.0), (PointSet{2}));
  EXPECT_THROW(maximal_packing_cover(s, 2, 0.5, 1.0), PreconditionError);
}

// Exhaustive check of the packing, maximality and cover properties.
TEST(Packing, CircleCoverAndMaximality) {
  const auto s = circle_space(100);
  for (PointId p : {0u, 13u, 99u}) {
    const double r = 0.2, rho = 2.0;
    const auto centers = maximal_packing_cover(s, p, r, rho);
    const auto ball = ball_members(s, p, r);
    for (PointId c : centers) EXPECT_TRUE(std::binary_search(ball.begin(), ball.end(), c));
    for (std::size_t i = 0; i < centers.size(); ++i)
      for (std::size_t j = i + 1; j < centers.size(); ++j)
        EXPECT_GE(s.distance(centers[i], centers[j]), r / rho);
    for (PointId x : ball) {
      double best = 1e9;
      for (PointId c : centers) best = std::min(best, s.distance(x, c));
      EXPECT_LT(best, r / rho);
    }
    // The ball is an arc of length 0.38; a packing with gaps >= 0.1 along it
    // has at most floor(0.38 / 0.1) + 1 = 4 points.
    EXPECT_LE(centers.size(), 4u);
    EXPECT_GE(centers.size(), 2u);
  }
}

TEST(Packing, HomogeneousBoundOnGridTorus) {
  // Uniform grid on the torus [0,1)^2: mass of B(p, r) is between C1 r^2 and
  // C2 r^2 for the measured constants; counts obey (6 rho)^2 C2/C1.
  const int side = 24;
  std::vector<Coords> pts;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) pts.push_back({double(i) / side, double(j) / side});
  auto s = FiniteMetricMeasureSpace::from_coordinates(
      pts, std::vector<double>(side * side, 1.0 / (side * side)), TorusMetric{{1.0, 1.0}});
  double c1 = 1e300, c2 = 0;
  for (double r = 2.0 / side; r <= 0.5; r *= 1.25) {
    const double m = set_mass(s, ball_members(s, 0, r));
    c1 = std::min(c1, m / (r * r));
    c2 = std::max(c2, m / (r * r));
  }
  for (double rho : {2.0, 4.0}) {
    const double bound = std::pow(6 * rho, 2) * c2 / c1;
    for (PointId p = 0; p < s.size(); p += 37) {
      EXPECT_LE(double(maximal_packing_cover(s, p, 0.4, rho).size()), bound);
    }
  }
}

TEST(Restricted, GreatCircleMatchesArcLength) {
  SubmanifoldSample sample;
  const int n = 64;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * i / n;
    sample.ambient_points.push_back({std::cos(t), std::sin(t), 0.0});
    sample.weights.push_back(2 * kPi / n);
  }
  const auto s = restricted_space(SphereMetric{1.0}, sample);
  for (PointId i = 0; i < n; i += 5) {
    for (PointId j = 0; j < n; j += 3) {
      const double gap = std::abs(double(i) - double(j)) * 2 * kPi / n;
      const double arc = std::min(gap, 2 * kPi - gap);
      EXPECT_NEAR(s.distance(i, j), arc, 1e-12);
    }
  }
  EXPECT_NEAR(s.total_mass(), 2 * kPi, 1e-12);
  EXPECT_THROW(restricted_space(SphereMetric{1.0}, SubmanifoldSample{}), PreconditionError);
}

TEST(SpaceIo, CoordinateRoundTrip) {
  const auto s = circle_space(7);
  std::stringstream ss;
  write_space_csv(ss, s);
  const auto back = read_space_csv(ss);
  ASSERT_EQ(back.size(), s.size());
  EXPECT_EQ(back.metric_name(), s.metric_name());
  for (PointId i = 0; i < s.size(); ++i) {
    EXPECT_EQ(back.weight(i), s.weight(i));
    for (PointId j = 0; j < s.size(); ++j) EXPECT_EQ(back.distance(i, j), s.distance(i, j));
  }
}

TEST(SpaceIo, PrecomputedRoundTrip) {
  const auto s = FiniteMetricMeasureSpace::from_matrix({0, 1.5, 1.5, 0}, {0.25, 0.75});
  std::stringstream sp, mx;
  write_space_csv(sp, s);
  write_distance_matrix_csv(mx, s);
  EXPECT_NE(sp.str().find("# metric=precomputed"), std::string::npos);
  const auto back = read_space_csv(sp, &mx);
  EXPECT_EQ(back.distance(0, 1), 1.5);
  EXPECT_EQ(back.weight(1), 0.75);
}

TEST(SpaceIo, MalformedInputs) {
  std::stringstream no_header("0,1,2\n");
  EXPECT_THROW(read_space_csv(no_header), ConfigError);
  std::stringstream bad_num("# metric=euclidean\nid,x1,weight\n0,abc,1\n");
  EXPECT_THROW(read_space_csv(bad_num), ConfigError);
  std::stringstream missing_matrix("# metric=precomputed\nid,weight\n0,1\n");
  EXPECT_THROW(read_space_csv(missing_matrix), ConfigError);
  std::stringstream ids("id,x1,weight\n1,0,1\n");
  EXPECT_THROW(read_space_csv(ids), ConfigError);
}

}  // namespace
}  // namespace specgeom
