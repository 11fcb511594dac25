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

// Space-form comparison functions: the generalized sine sn_delta, model
// sphere areas and ball volumes, the alpha/epsilon auxiliary ratios used in
// the volume monotonicity argument, rad(g), the two-sided ball volume bounds
// and the cover refinement functions built from them.

#ifndef SPECGEOM_COMPARISON_HPP_
#define SPECGEOM_COMPARISON_HPP_

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "specgeom/error.hpp"
#include "specgeom/quadrature.hpp"

namespace specgeom {

inline constexpr double kFlatCurvatureTol = 1e-12;
inline constexpr double kConjugateClamp = 1e-9;
inline constexpr double kSeriesThreshold = 1e-4;
inline constexpr double kComparisonQuadTol = 1e-10;

inline bool is_flat(double delta) { return std::abs(delta) < kFlatCurvatureTol; }

// pi/sqrt(delta), or +inf when delta <= 0.
inline double conjugate_radius(double delta) {
  if (delta <= 0.0 || is_flat(delta)) return std::numeric_limits<double>::infinity();
  return std::numbers::pi / std::sqrt(delta);
}

// Curvature and dimension context shared by all model-volume formulas.
struct ComparisonProfile {
  double delta = 0.0;
  int dim = 1;
  std::optional<double> ricci_lower;

  void validate() const {
    if (dim < 1) throw DomainError("ComparisonProfile: dim must be >= 1");
    if (!std::isfinite(delta)) throw DomainError("ComparisonProfile: delta must be finite");
    if (ricci_lower && !(*ricci_lower >= 0.0)) {
      throw DomainError("ComparisonProfile: ricci_lower must be >= 0");
    }
  }
};

// rad = min(inj, pi/(2 sqrt(delta))).
inline double rad_radius(double inj, double delta) {
  if (!(inj > 0.0)) throw DomainError("rad_radius: injectivity radius must be positive");
  if (delta <= 0.0 || is_flat(delta)) return inj;
  return std::min(inj, 0.5 * std::numbers::pi / std::sqrt(delta));
}

struct RadiusData {
  double inj = 0.0;
  double rad = 0.0;
  std::optional<double> conv;

  static RadiusData make(double inj, double delta, std::optional<double> conv = {}) {
    if (conv && *conv > inj) throw DomainError("RadiusData: conv must not exceed inj");
    return {inj, rad_radius(inj, delta), conv};
  }
};

inline void check_sn_domain(double delta, double t) {
  if (!(t >= 0.0)) throw DomainError("sn_delta: t must be >= 0");
  if (t > conjugate_radius(delta)) {
    throw DomainError("sn_delta: t exceeds pi/sqrt(delta)");
  }
}

inline double sn_delta(double delta, double t) {
  check_sn_domain(delta, t);
  if (is_flat(delta)) return t;
  if (delta > 0.0) {
    const double s = std::sqrt(delta);
    return std::sin(s * t) / s;
  }
  const double s = std::sqrt(-delta);
  return std::sinh(s * t) / s;
}

inline double sn_delta_prime(double delta, double t) {
  check_sn_domain(delta, t);
  if (is_flat(delta)) return 1.0;
  if (delta > 0.0) return std::cos(std::sqrt(delta) * t);
  return std::cosh(std::sqrt(-delta) * t);
}

// Volume of the unit ball in R^n, via log-gamma so that large n does not
// overflow the intermediate power of pi.
inline double unit_ball_volume(int n) {
  if (n < 0) throw DomainError("unit_ball_volume: n must be >= 0");
  const double half = 0.5 * n;
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

namespace detail {

inline void check_dim(int n) {
  if (n < 1) throw DomainError("dimension must be >= 1");
}

inline void check_model_radius(double delta, double r) {
  if (!(r >= 0.0)) throw DomainError("model radius must be >= 0");
  if (r > conjugate_radius(delta)) throw DomainError("model radius exceeds pi/sqrt(delta)");
}

// Radii where sn_delta vanishes again are excluded, with a small margin.
inline void check_open_radius(double delta, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be > 0");
  const double conj = conjugate_radius(delta);
  if (std::isfinite(conj) && r >= conj - kConjugateClamp * std::max(1.0, conj)) {
    throw DomainError("radius too close to pi/sqrt(delta)");
  }
}

inline bool use_series(double delta, double r) {
  return r * std::max(1.0, std::sqrt(std::abs(delta))) < kSeriesThreshold;
}

// Coefficients of sn^{n-1}(t) = t^{n-1} (1 + c1 t^2 + c2 t^4 + ...).
struct SeriesCoefficients {
  double c1, c2;
  double alpha1, alpha2;  // alpha(r) = r (1/n + alpha1 r^2 + alpha2 r^4)
};

inline SeriesCoefficients series_coefficients(double delta, int n) {
  const double a = -delta / 6.0;
  const double b = delta * delta / 120.0;
  const double p = n - 1;
  SeriesCoefficients s{};
  s.c1 = p * a;
  s.c2 = p * b + 0.5 * p * (p - 1.0) * a * a;
  const double nn = n;
  s.alpha1 = s.c1 * (1.0 / (nn + 2.0) - 1.0 / nn);
  s.alpha2 = s.c2 / (nn + 4.0) - s.c1 * s.c1 / (nn + 2.0) + s.c1 * s.c1 / nn - s.c2 / nn;
  return s;
}

}  // namespace detail

// Integral of sn_delta^{n-1} over [0, r].
inline double sn_power_integral(double delta, int n, double r) {
  detail::check_dim(n);
  detail::check_model_radius(delta, r);
  if (r == 0.0) return 0.0;
  if (n == 1) return r;
  if (is_flat(delta)) return std::pow(r, n) / n;
  auto integrand = [delta, n](double t) { return std::pow(sn_delta(delta, t), n - 1); };
  return integrate(integrand, 0.0, r, kComparisonQuadTol).value;
}

// A_delta(r) = n omega_n sn^{n-1}(r).
inline double model_sphere_area(double delta, int n, double r) {
  detail::check_dim(n);
  detail::check_model_radius(delta, r);
  return n * unit_ball_volume(n) * std::pow(sn_delta(delta, r), n - 1);
}

// V_delta(r) = n omega_n int_0^r sn^{n-1}.
inline double model_ball_volume(double delta, int n, double r) {
  detail::check_dim(n);
  detail::check_model_radius(delta, r);
  if (is_flat(delta)) return unit_ball_volume(n) * std::pow(r, n);
  return n * unit_ball_volume(n) * sn_power_integral(delta, n, r);
}

inline double model_ball_volume(const ComparisonProfile& p, double r) {
  p.validate();
  return model_ball_volume(p.delta, p.dim, r);
}

// alpha(r) = V^n_delta(r) / A^{n-1}_delta(r); removable singularity at 0.
inline double alpha_ratio(double delta, int n, double r) {
  detail::check_dim(n);
  detail::check_open_radius(delta, r);
  if (detail::use_series(delta, r)) {
    const auto s = detail::series_coefficients(delta, n);
    const double r2 = r * r;
    return r * (1.0 / n + s.alpha1 * r2 + s.alpha2 * r2 * r2);
  }
  return sn_power_integral(delta, n, r) / std::pow(sn_delta(delta, r), n - 1);
}

// epsilon(r) = 1 - n (sn'/sn^n)(r) int_0^r sn^{n-1}; defined for delta > 0.
inline double epsilon_delta(double delta, int n, double r) {
  detail::check_dim(n);
  if (!(delta > 0.0) || is_flat(delta)) throw DomainError("epsilon_delta: delta must be > 0");
  detail::check_open_radius(delta, r);
  if (detail::use_series(delta, r)) {
    const auto s = detail::series_coefficients(delta, n);
    const double r2 = r * r;
    return (delta / 3.0 - n * s.alpha1) * r2 +
           (delta * delta / 45.0 + n * s.alpha1 * delta / 3.0 - n * s.alpha2) * r2 * r2;
  }
  return 1.0 - n * sn_delta_prime(delta, r) * alpha_ratio(delta, n, r) / sn_delta(delta, r);
}

struct VolumeBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double v, double slack = 0.0) const {
    return v + slack >= lower && v - slack <= upper;
  }
};

// Two-sided bounds on Vol(B(p,r)) for 0 < r <= rad in a closed manifold with
// sectional curvature <= delta, delta >= 0.
inline VolumeBounds ball_volume_bounds(int m, double r, double rad, double vol_m) {
  detail::check_dim(m);
  if (!(r > 0.0)) throw DomainError("ball_volume_bounds: r must be > 0");
  if (r > rad) throw DomainError("ball_volume_bounds: r exceeds rad");
  const double w = unit_ball_volume(m);
  return {std::pow(2.0, 1 - m) * w * std::pow(r, m),
          std::pow(2.0, m - 1) * (vol_m / std::pow(rad, m)) * std::pow(r, m)};
}

// Two-sided bounds on Vol(B(p,r) cap Sigma^n) for p on a closed minimal Sigma.
inline VolumeBounds extrinsic_ball_volume_bounds(int n, double r, double rad, double vol_s) {
  detail::check_dim(n);
  if (!(r > 0.0)) throw DomainError("extrinsic_ball_volume_bounds: r must be > 0");
  if (r > rad) throw DomainError("extrinsic_ball_volume_bounds: r exceeds rad");
  const double w = unit_ball_volume(n);
  return {std::pow(2.0, -n) * n * w * std::pow(r, n),
          std::pow(2.0, n) * (vol_s / std::pow(rad, n)) * std::pow(r, n)};
}

struct BergerCheck {
  bool holds = false;
  double slack = 0.0;         // vol / V_delta(rad)
  double model_volume = 0.0;  // V_delta(rad)
  bool submanifold = false;
};

// vol >= V^dim_delta(rad); the slack ratio is reported, equality is not
// examined.
inline BergerCheck berger_volume_check(double vol, double delta, int dim, double rad,
                                       bool submanifold = false) {
  BergerCheck out;
  out.submanifold = submanifold;
  out.model_volume = rad > 0.0 ? model_ball_volume(delta, dim, rad) : 0.0;
  out.slack = out.model_volume > 0.0 ? vol / out.model_volume
                                     : std::numeric_limits<double>::infinity();
  out.holds = vol >= out.model_volume;
  return out;
}

// Cover refinement functions N(rho).
struct HomogeneousRefinement {
  double alpha, c1, c2;  // C1 r^alpha <= mass(B(p,r)) <= C2 r^alpha
};
struct AmbientRefinement {
  int m;
  double vol, rad;
};
struct SubmanifoldRefinement {
  int n;
  double vol, rad;
};
struct BishopGromovRefinement {
  int m;
};
using RefinementKind = std::variant<HomogeneousRefinement, AmbientRefinement,
                                    SubmanifoldRefinement, BishopGromovRefinement>;

inline double ambient_refinement_constant(int m) {
  return std::pow(24.0, m) / unit_ball_volume(m);
}

inline double submanifold_refinement_constant(int n) {
  return std::pow(24.0, n) / (n * unit_ball_volume(n));
}

inline double refinement_function(const RefinementKind& kind, double rho) {
  if (!(rho > 1.0)) throw DomainError("refinement_function: rho must be > 1");
  struct Visitor {
    double rho;
    double operator()(const HomogeneousRefinement& h) const {
      if (!(h.alpha > 0 && h.c1 > 0 && h.c2 > 0)) {
        throw DomainError("homogeneous refinement: parameters must be positive");
      }
      return std::pow(6.0 * rho, h.alpha) * h.c2 / h.c1;
    }
    double operator()(const AmbientRefinement& a) const {
      if (a.m < 1 || !(a.vol > 0 && a.rad > 0)) {
        throw DomainError("ambient refinement: parameters must be positive");
      }
      return ambient_refinement_constant(a.m) * a.vol / std::pow(a.rad, a.m) * std::pow(rho, a.m);
    }
    double operator()(const SubmanifoldRefinement& s) const {
      if (s.n < 1 || !(s.vol > 0 && s.rad > 0)) {
        throw DomainError("submanifold refinement: parameters must be positive");
      }
      return submanifold_refinement_constant(s.n) * s.vol / std::pow(s.rad, s.n) *
             std::pow(rho, s.n);
    }
    double operator()(const BishopGromovRefinement& b) const {
      if (b.m < 1) throw DomainError("bishop-gromov refinement: m must be >= 1");
      return std::pow(6.0 * rho, b.m) * std::exp(b.m - 1.0);
    }
  };
  return std::visit(Visitor{rho}, kind);
}

inline std::string refinement_name(const RefinementKind& kind) {
  switch (kind.index()) {
    case 0: return "homogeneous";
    case 1: return "ambient";
    case 2: return "submanifold";
    default: return "bishop-gromov";
  }
}

}  // namespace specgeom

#endif  // SPECGEOM_COMPARISON_HPP_
