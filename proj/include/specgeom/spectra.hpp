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

// Closed-form Laplace spectra of the analytic models.

#ifndef SPECGEOM_SPECTRA_HPP_
#define SPECGEOM_SPECTRA_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "specgeom/error.hpp"
#include "specgeom/manifolds.hpp"

namespace specgeom {

enum class SpectrumMethod { analytic, dense, iterative };

inline const char* to_string(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::analytic: return "analytic";
    case SpectrumMethod::dense: return "dense";
    default: return "iterative";
  }
}

struct SpectrumEstimate {
  std::vector<double> eigenvalues;  // nondecreasing, with multiplicity
  SpectrumMethod method = SpectrumMethod::analytic;
  std::string note;
};

// First count+1 eigenvalues 4 pi^2 sum (v_i / L_i)^2 over v in Z^m. The
// enumeration box grows until the sorted prefix is certainly complete.
inline SpectrumEstimate torus_spectrum(std::span<const double> periods, std::size_t count) {
  const std::size_t m = periods.size();
  if (m == 0) throw PreconditionError("torus_spectrum: no periods");
  const double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  double vol = 1.0;
  for (double l : periods) vol *= l;
  // Weyl guess for the cutoff, then doubled until enough modes fall below it.
  double cutoff = four_pi2 * std::pow((count + 1.0) / (unit_ball_volume(int(m)) * vol), 2.0 / m) * 1.5 + 1e-12;
  for (;;) {
    std::vector<double> vals;
    std::vector<long> bound(m);
    for (std::size_t j = 0; j < m; ++j) {
      bound[j] = static_cast<long>(std::floor(periods[j] * std::sqrt(cutoff / four_pi2))) + 1;
    }
    std::vector<long> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = -bound[j];
    for (;;) {
      double lam = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double q = double(v[j]) / periods[j];
        lam += q * q;
      }
      lam *= four_pi2;
      if (lam <= cutoff) vals.push_back(lam);
      std::size_t j = m;
      while (j-- > 0) {
        if (++v[j] <= bound[j]) break;
        v[j] = -bound[j];
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
    if (vals.size() >= count + 1) {
      std::sort(vals.begin(), vals.end());
      vals.resize(count + 1);
      return {std::move(vals), SpectrumMethod::analytic, "dual lattice enumeration"};
    }
    cutoff *= 2.0;
  }
}

inline double binomial_coefficient(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// Dimension of degree-l spherical harmonics on S^m.
inline long sphere_multiplicity(int m, long l) {
  return static_cast<long>(binomial_coefficient(l + m, m) - binomial_coefficient(l + m - 2, m));
}

inline SpectrumEstimate sphere_spectrum(int m, double radius, std::size_t count) {
  if (m < 1 || !(radius > 0)) throw PreconditionError("sphere_spectrum: bad parameters");
  std::vector<double> vals;
  for (long l = 0; vals.size() < count + 1; ++l) {
    const double lam = double(l) * double(l + m - 1) / (radius * radius);
    const long mult = sphere_multiplicity(m, l);
    for (long i = 0; i < mult && vals.size() < count + 1; ++i) vals.push_back(lam);
  }
  return {std::move(vals), SpectrumMethod::analytic, "spherical harmonics"};
}

// 2 (a^2 + b^2) / R^2 over (a, b) in Z^2.
inline SpectrumEstimate clifford_spectrum(double radius, std::size_t count) {
  std::vector<double> vals;
  for (long n = 1;; n *= 2) {
    vals.clear();
    for (long a = -n; a <= n; ++a)
      for (long b = -n; b <= n; ++b)
        if (a * a + b * b <= n * n) vals.push_back(2.0 * double(a * a + b * b) / (radius * radius));
    if (vals.size() >= count + 1) break;
  }
  std::sort(vals.begin(), vals.end());
  vals.resize(count + 1);
  return {std::move(vals), SpectrumMethod::analytic, "clifford lattice"};
}

inline SpectrumEstimate intrinsic_spectrum(const ManifoldModel& model, std::size_t count) {
  validate_model(model);
  if (const auto* t = std::get_if<FlatTorus>(&model)) return torus_spectrum(t->periods, count);
  const auto& s = std::get<RoundSphere>(model);
  return sphere_spectrum(s.m, s.radius, count);
}

inline SpectrumEstimate intrinsic_spectrum(const SubmanifoldModel& sub, std::size_t count) {
  validate_submanifold(sub);
  if (const auto* s = std::get_if<GreatSubsphere>(&sub)) return sphere_spectrum(s->n, s->radius, count);
  if (const auto* c = std::get_if<CliffordTorus>(&sub)) return clifford_spectrum(c->radius, count);
  if (const auto* g = std::get_if<GreatCircle>(&sub)) {
    const double l = 2.0 * std::numbers::pi * g->radius;
    return torus_spectrum(std::span<const double>(&l, 1), count);
  }
  throw DomainError("intrinsic_spectrum: no closed-form spectrum for " + submanifold_name(sub));
}

}  // namespace specgeom

#endif  // SPECGEOM_SPECTRA_HPP_
