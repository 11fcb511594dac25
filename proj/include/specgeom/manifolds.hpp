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

// Analytic model manifolds and minimal submanifolds.

#ifndef SPECGEOM_MANIFOLDS_HPP_
#define SPECGEOM_MANIFOLDS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "specgeom/comparison.hpp"
#include "specgeom/error.hpp"
#include "specgeom/metric.hpp"
#include "specgeom/rng.hpp"

namespace specgeom {

inline constexpr double kOnModelTol = 1e-9;

// R^m / (L_1 Z x ... x L_m Z), coordinates taken modulo the periods.
struct FlatTorus {
  std::vector<double> periods;
};

// Round sphere S^m of radius R embedded in R^{m+1}.
struct RoundSphere {
  int m = 2;
  double radius = 1.0;
};

using ManifoldModel = std::variant<FlatTorus, RoundSphere>;

inline void validate_model(const ManifoldModel& model) {
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    if (t->periods.empty()) throw PreconditionError("flat torus needs at least one period");
    for (double l : t->periods)
      if (!(l > 0.0)) throw PreconditionError("flat torus periods must be positive");
  } else {
    const auto& s = std::get<RoundSphere>(model);
    if (s.m < 1 || !(s.radius > 0.0)) throw PreconditionError("sphere needs m >= 1 and R > 0");
  }
}

inline int model_dim(const ManifoldModel& model) {
  if (const auto* t = std::get_if<FlatTorus>(&model)) return static_cast<int>(t->periods.size());
  return std::get<RoundSphere>(model).m;
}

inline int embedding_dim(const ManifoldModel& model) {
  return std::holds_alternative<FlatTorus>(model) ? model_dim(model) : model_dim(model) + 1;
}

inline double model_volume(const ManifoldModel& model) {
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    double v = 1.0;
    for (double l : t->periods) v *= l;
    return v;
  }
  const auto& s = std::get<RoundSphere>(model);
  return (s.m + 1) * unit_ball_volume(s.m + 1) * std::pow(s.radius, s.m);
}

inline double model_inj(const ManifoldModel& model) {
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    return *std::min_element(t->periods.begin(), t->periods.end()) / 2.0;
  }
  return std::numbers::pi * std::get<RoundSphere>(model).radius;
}

inline double model_delta(const ManifoldModel& model) {
  if (std::holds_alternative<FlatTorus>(model)) return 0.0;
  const double r = std::get<RoundSphere>(model).radius;
  return 1.0 / (r * r);
}

inline double model_rad(const ManifoldModel& model) {
  return rad_radius(model_inj(model), model_delta(model));
}

inline double model_conv(const ManifoldModel& model) {
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    return *std::min_element(t->periods.begin(), t->periods.end()) / 4.0;
  }
  return std::numbers::pi * std::get<RoundSphere>(model).radius / 2.0;
}

inline RadiusData model_radius_data(const ManifoldModel& model) {
  return RadiusData::make(model_inj(model), model_delta(model), model_conv(model));
}

inline Metric model_metric(const ManifoldModel& model) {
  if (const auto* t = std::get_if<FlatTorus>(&model)) return TorusMetric{t->periods};
  return SphereMetric{std::get<RoundSphere>(model).radius};
}

inline std::string model_name(const ManifoldModel& model) {
  std::ostringstream os;
  os.precision(12);
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    os << "torus:";
    for (std::size_t i = 0; i < t->periods.size(); ++i) os << (i ? "," : "") << t->periods[i];
  } else {
    const auto& s = std::get<RoundSphere>(model);
    os << "sphere:" << s.m << "," << s.radius;
  }
  return os.str();
}

inline void check_on_model(const ManifoldModel& model, std::span<const double> x) {
  if (static_cast<int>(x.size()) != embedding_dim(model)) {
    throw DomainError("point has wrong number of coordinates for " + model_name(model));
  }
  if (const auto* s = std::get_if<RoundSphere>(&model)) {
    double n2 = 0.0;
    for (double v : x) n2 += v * v;
    if (std::abs(std::sqrt(n2) - s->radius) > kOnModelTol * std::max(1.0, s->radius)) {
      throw DomainError("point is off the sphere");
    }
  }
}

inline double model_distance(const ManifoldModel& model, std::span<const double> x,
                             std::span<const double> y) {
  check_on_model(model, x);
  check_on_model(model, y);
  return metric_distance(model_metric(model), x, y);
}

struct RescaledModel {
  ManifoldModel model;
  double scale = 1.0;     // lengths multiply by scale
  double kappa = 0.0;     // Ricci lower bound after scaling
};

// Scales lengths so that min(1/sqrt(kappa), rad) = target (kappa = 0 means
// the curvature clause is absent).
inline RescaledModel rescale_model(const ManifoldModel& model, double target = 3.0,
                                   double kappa = 0.0) {
  validate_model(model);
  if (!(target > 0.0) || !(kappa >= 0.0)) throw PreconditionError("rescale_model: bad target");
  const double rad = model_rad(model);
  const double curv = kappa > 0.0 ? 1.0 / std::sqrt(kappa) : std::numeric_limits<double>::infinity();
  const double base = std::min(curv, rad);
  if (!(base > 0.0) || !std::isfinite(base)) throw PreconditionError("rescale_model: no finite length scale");
  RescaledModel out;
  out.scale = target / base;
  out.kappa = kappa / (out.scale * out.scale);
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    FlatTorus s = *t;
    for (double& l : s.periods) l *= out.scale;
    out.model = s;
  } else {
    RoundSphere s = std::get<RoundSphere>(model);
    s.radius *= out.scale;
    out.model = s;
  }
  return out;
}

struct GeodesicChain {
  std::vector<Coords> centers;  // p_i = gamma(i L / (2k)), i = 0..2k
  double r = 0.0;               // L / (4k)
  double length = 0.0;          // L = d(p, q), q a cut point of p
  double min_gap = 0.0;         // smallest pairwise centre distance
  bool certified = false;       // min_gap >= 2r
};

// Chain of 2k+1 centres along a minimizing geodesic from p to a cut point:
// the antipode on spheres, the half-period point along the shortest lattice
// direction on tori (lowest index on ties).
inline GeodesicChain geodesic_chain(const ManifoldModel& model, std::span<const double> p,
                                    int k) {
  if (k < 1) throw PreconditionError("geodesic_chain: k must be >= 1");
  validate_model(model);
  check_on_model(model, p);
  GeodesicChain chain;
  const int steps = 2 * k;
  if (const auto* t = std::get_if<FlatTorus>(&model)) {
    const auto it = std::min_element(t->periods.begin(), t->periods.end());
    const std::size_t dir = static_cast<std::size_t>(it - t->periods.begin());
    chain.length = *it / 2.0;
    for (int i = 0; i <= steps; ++i) {
      Coords c(p.begin(), p.end());
      c[dir] += chain.length * i / steps;
      chain.centers.push_back(std::move(c));
    }
  } else {
    const auto& s = std::get<RoundSphere>(model);
    const std::size_t d = p.size();
    std::vector<double> u(p.begin(), p.end());
    for (double& v : u) v /= s.radius;
    // Unit tangent at p: Gram-Schmidt of e0 (or e1 when e0 is parallel to p).
    std::vector<double> tvec(d, 0.0);
    for (std::size_t axis = 0; axis < 2; ++axis) {
      std::fill(tvec.begin(), tvec.end(), 0.0);
      tvec[axis] = 1.0;
      const double proj = u[axis];
      for (std::size_t j = 0; j < d; ++j) tvec[j] -= proj * u[j];
      double norm = 0.0;
      for (double v : tvec) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (double& v : tvec) v /= norm;
        break;
      }
    }
    chain.length = std::numbers::pi * s.radius;
    for (int i = 0; i <= steps; ++i) {
      const double angle = std::numbers::pi * i / steps;
      Coords c(d);
      for (std::size_t j = 0; j < d; ++j) {
        c[j] = s.radius * (std::cos(angle) * u[j] + std::sin(angle) * tvec[j]);
      }
      chain.centers.push_back(std::move(c));
    }
  }
  chain.r = chain.length / (4.0 * k);
  const Metric metric = model_metric(model);
  chain.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < chain.centers.size(); ++i)
    for (std::size_t j = i + 1; j < chain.centers.size(); ++j)
      chain.min_gap =
          std::min(chain.min_gap, metric_distance(metric, chain.centers[i], chain.centers[j]));
  chain.certified = chain.min_gap >= 2.0 * chain.r - 1e-12 * chain.length;
  return chain;
}

// Minimal submanifolds.
struct GreatSubsphere {  // S^n inside S^m(R), first n+1 coordinates
  int n = 2;
  int m = 3;
  double radius = 1.0;
};
struct CliffordTorus {  // (R/sqrt2)(cos, sin, cos, sin) inside S^3(R)
  double radius = 1.0;
};
struct GreatCircle {  // S^1 inside S^2(R)
  double radius = 1.0;
};
struct AffinePlane {  // R^n inside R^m, first n coordinates
  int n = 2;
  int m = 3;
};
struct Catenoid {  // (a cosh v cos u, a cosh v sin u, a v) inside R^3
  double a = 1.0;
};

using SubmanifoldModel =
    std::variant<GreatSubsphere, CliffordTorus, GreatCircle, AffinePlane, Catenoid>;

inline void validate_submanifold(const SubmanifoldModel& sub) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GreatSubsphere>) {
          if (s.n < 1 || s.n >= s.m || !(s.radius > 0)) throw PreconditionError("great subsphere needs 1 <= n < m, R > 0");
        } else if constexpr (std::is_same_v<T, AffinePlane>) {
          if (s.n < 1 || s.n >= s.m) throw PreconditionError("affine plane needs 1 <= n < m");
        } else if constexpr (std::is_same_v<T, Catenoid>) {
          if (!(s.a > 0)) throw PreconditionError("catenoid needs a > 0");
        } else {
          if (!(s.radius > 0)) throw PreconditionError("radius must be positive");
        }
      },
      sub);
}

inline int submanifold_dim(const SubmanifoldModel& sub) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GreatSubsphere> || std::is_same_v<T, AffinePlane>) return s.n;
        else if constexpr (std::is_same_v<T, GreatCircle>) return 1;
        else return 2;
      },
      sub);
}

// Ambient model for the closed variants; the complete ones live in R^m.
inline std::optional<ManifoldModel> ambient_model(const SubmanifoldModel& sub) {
  if (const auto* s = std::get_if<GreatSubsphere>(&sub)) return RoundSphere{s->m, s->radius};
  if (const auto* c = std::get_if<CliffordTorus>(&sub)) return RoundSphere{3, c->radius};
  if (const auto* g = std::get_if<GreatCircle>(&sub)) return RoundSphere{2, g->radius};
  return std::nullopt;
}

inline int ambient_dim(const SubmanifoldModel& sub) {
  if (auto m = ambient_model(sub)) return model_dim(*m);
  if (const auto* p = std::get_if<AffinePlane>(&sub)) return p->m;
  return 3;
}

inline Metric ambient_metric(const SubmanifoldModel& sub) {
  if (auto m = ambient_model(sub)) return model_metric(*m);
  return EuclideanMetric{};
}

inline bool is_closed(const SubmanifoldModel& sub) { return ambient_model(sub).has_value(); }

inline bool is_minimal(const SubmanifoldModel&) { return true; }

// Intrinsic volume of the closed variants.
inline double submanifold_volume(const SubmanifoldModel& sub) {
  constexpr double pi = std::numbers::pi;
  if (const auto* s = std::get_if<GreatSubsphere>(&sub)) {
    return model_volume(RoundSphere{s->n, s->radius});
  }
  if (const auto* c = std::get_if<CliffordTorus>(&sub)) return 2.0 * pi * pi * c->radius * c->radius;
  if (const auto* g = std::get_if<GreatCircle>(&sub)) return 2.0 * pi * g->radius;
  throw DomainError("submanifold_volume: complete variant has infinite volume");
}

// Intrinsic flat torus of the Clifford torus: both periods sqrt(2) pi R.
inline FlatTorus clifford_intrinsic_torus(double radius) {
  const double l = std::numbers::sqrt2 * std::numbers::pi * radius;
  return FlatTorus{{l, l}};
}

// Embedding of the Clifford torus from intrinsic coordinates (s, t) in
// [0, sqrt2 pi R)^2.
inline Coords clifford_embed(double radius, double s, double t) {
  const double c = radius / std::numbers::sqrt2;
  const double a = s / c, b = t / c;
  return {c * std::cos(a), c * std::sin(a), c * std::cos(b), c * std::sin(b)};
}

inline Coords catenoid_embed(double a, double u, double v) {
  return {a * std::cosh(v) * std::cos(u), a * std::cosh(v) * std::sin(u), a * v};
}

// Canonical reference point on the submanifold.
inline Coords reference_point(const SubmanifoldModel& sub) {
  const int m = ambient_dim(sub);
  Coords p(static_cast<std::size_t>(is_closed(sub) ? m + 1 : m), 0.0);
  if (const auto* c = std::get_if<CliffordTorus>(&sub)) return clifford_embed(c->radius, 0.0, 0.0);
  if (const auto* k = std::get_if<Catenoid>(&sub)) return catenoid_embed(k->a, 0.0, 0.0);
  if (const auto* s = std::get_if<GreatSubsphere>(&sub)) p[0] = s->radius;
  if (const auto* g = std::get_if<GreatCircle>(&sub)) p[0] = g->radius;
  return p;
}

// Analytic density at infinity of the complete Euclidean variants.
inline double analytic_density(const SubmanifoldModel& sub) {
  if (std::holds_alternative<AffinePlane>(sub)) return 1.0;
  if (std::holds_alternative<Catenoid>(sub)) return 2.0;
  throw DomainError("analytic_density: closed variant");
}

inline std::string submanifold_name(const SubmanifoldModel& sub) {
  std::ostringstream os;
  os.precision(12);
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GreatSubsphere>) os << "great_subsphere:" << s.n << "," << s.m << "," << s.radius;
        else if constexpr (std::is_same_v<T, CliffordTorus>) os << "clifford_torus:" << s.radius;
        else if constexpr (std::is_same_v<T, GreatCircle>) os << "great_circle:" << s.radius;
        else if constexpr (std::is_same_v<T, AffinePlane>) os << "affine_plane:" << s.n << "," << s.m;
        else os << "catenoid:" << s.a;
      },
      sub);
  return os.str();
}

// Parses "torus:L1,..,Lm" or "sphere:m,R".
inline ManifoldModel parse_model(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const auto nums = colon == std::string::npos ? std::vector<double>{} : parse_number_list(spec.substr(colon + 1));
  ManifoldModel model;
  if (head == "torus") {
    model = FlatTorus{nums};
  } else if (head == "sphere" && nums.size() == 2) {
    model = RoundSphere{static_cast<int>(nums[0]), nums[1]};
  } else {
    throw ConfigError("unknown model '" + spec + "' (torus:L1,..,Lm | sphere:m,R)");
  }
  try {
    validate_model(model);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  return model;
}

inline SubmanifoldModel parse_submanifold(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const auto nums = colon == std::string::npos ? std::vector<double>{} : parse_number_list(spec.substr(colon + 1));
  auto want = [&](std::size_t count) {
    if (nums.size() != count) throw ConfigError("'" + head + "' expects " + std::to_string(count) + " parameters");
  };
  SubmanifoldModel sub;
  if (head == "great_subsphere") {
    want(3);
    sub = GreatSubsphere{static_cast<int>(nums[0]), static_cast<int>(nums[1]), nums[2]};
  } else if (head == "clifford_torus") {
    want(1);
    sub = CliffordTorus{nums[0]};
  } else if (head == "great_circle") {
    want(1);
    sub = GreatCircle{nums[0]};
  } else if (head == "affine_plane") {
    want(2);
    sub = AffinePlane{static_cast<int>(nums[0]), static_cast<int>(nums[1])};
  } else if (head == "catenoid") {
    want(1);
    sub = Catenoid{nums[0]};
  } else {
    throw ConfigError("unknown submanifold '" + spec + "'");
  }
  try {
    validate_submanifold(sub);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  return sub;
}

}  // namespace specgeom

#endif  // SPECGEOM_MANIFOLDS_HPP_
