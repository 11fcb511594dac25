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

#ifndef SPECGEOM_METRIC_HPP_
#define SPECGEOM_METRIC_HPP_

#include <cmath>
#include <cstddef>
#include <sstream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "specgeom/error.hpp"

namespace specgeom {

using Coords = std::vector<double>;

struct EuclideanMetric {
  bool operator==(const EuclideanMetric&) const = default;
};

// Flat torus R^m / (L_1 Z x ... x L_m Z).
struct TorusMetric {
  std::vector<double> periods;
  bool operator==(const TorusMetric&) const = default;
};

// Round sphere of radius R centred at the origin; geodesic distance.
struct SphereMetric {
  double radius = 1.0;
  bool operator==(const SphereMetric&) const = default;
};

using Metric = std::variant<EuclideanMetric, TorusMetric, SphereMetric>;

inline double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// Shortest displacement from x to y on the torus, per coordinate.
inline double torus_wrap(double d, double period) {
  d = std::remainder(d, period);
  return d;
}

inline double torus_distance(std::span<const double> periods, std::span<const double> x,
                             std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = torus_wrap(y[i] - x[i], periods[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

// R * angle(x, y) with angle = 2 atan2(|x - y|, |x + y|), accurate at both
// small and near-antipodal separations.
inline double sphere_distance(double radius, std::span<const double> x,
                              std::span<const double> y) {
  double dm = 0.0, dp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dm += (x[i] - y[i]) * (x[i] - y[i]);
    dp += (x[i] + y[i]) * (x[i] + y[i]);
  }
  return radius * 2.0 * std::atan2(std::sqrt(dm), std::sqrt(dp));
}

inline double metric_distance(const Metric& metric, std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("metric_distance: dimension mismatch");
  if (const auto* t = std::get_if<TorusMetric>(&metric)) {
    if (t->periods.size() != x.size()) throw DomainError("torus metric: dimension mismatch");
    return torus_distance(t->periods, x, y);
  }
  if (const auto* s = std::get_if<SphereMetric>(&metric)) return sphere_distance(s->radius, x, y);
  return euclidean_distance(x, y);
}

inline std::string metric_tag(const Metric& metric) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* t = std::get_if<TorusMetric>(&metric)) {
    os << "torus:";
    for (std::size_t i = 0; i < t->periods.size(); ++i) os << (i ? "," : "") << t->periods[i];
  } else if (const auto* s = std::get_if<SphereMetric>(&metric)) {
    os << "sphere:" << s->radius;
  } else {
    os << "euclidean";
  }
  return os.str();
}

inline std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw ConfigError("bad number: " + item);
    } catch (const std::logic_error&) {
      throw ConfigError("bad number: '" + item + "'");
    }
  }
  return out;
}

// Parses "euclidean", "torus:L1,...,Lm" or "sphere:R"; "precomputed" is
// handled by the caller since it carries no closed form.
inline Metric parse_metric_tag(const std::string& tag) {
  if (tag == "euclidean") return EuclideanMetric{};
  const auto colon = tag.find(':');
  const std::string head = tag.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : tag.substr(colon + 1);
  if (head == "torus") {
    auto periods = parse_number_list(tail);
    if (periods.empty()) throw ConfigError("torus metric needs periods");
    for (double p : periods) {
      if (!(p > 0)) throw ConfigError("torus periods must be positive");
    }
    return TorusMetric{std::move(periods)};
  }
  if (head == "sphere") {
    auto r = parse_number_list(tail);
    if (r.size() != 1 || !(r[0] > 0)) throw ConfigError("sphere metric needs one positive radius");
    return SphereMetric{r[0]};
  }
  throw ConfigError("unknown metric tag: " + tag);
}

}  // namespace specgeom

#endif  // SPECGEOM_METRIC_HPP_
