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

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "specgeom/specgeom.hpp"

namespace {

using namespace specgeom;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  double time_limit = 0.0;  // seconds; 0 = none
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return g;
}

std::vector<double> open_grid(double hi, int n) {
  std::vector<double> g;
  for (int i = 1; i <= n; ++i) g.push_back(hi * i / (n + 1.0));
  return g;
}

ScenarioResult scenario(const std::string& name) {
  ScenarioConfig c;
  c.name = name;
  return run_scenario(c);
}

// 1: comparison-function relations on grids.
Outcome ac1() {
  Outcome o{true, "", 5.0};
  std::size_t checks = 0, bad = 0;
  auto check = [&](bool ok) {
    ++checks;
    if (!ok) ++bad;
  };
  const double rel = 1e-10;
  for (int n = 1; n <= 5; ++n) {
    for (double delta : {-1.0, 0.0}) {
      for (double r : log_grid(1e-3, 10.0, 1000)) {
        const double i = sn_power_integral(delta, n, r);
        const double snn = std::pow(sn_delta(delta, r), n);
        const double d = sn_delta_prime(delta, r);
        check((n - 1) * d * i <= snn * (1 + rel));
        check(snn <= n * d * i * (1 + rel));
      }
    }
    for (double r : open_grid(kPi, 1000)) {
      const double i = sn_power_integral(1.0, n, r);
      check(n * sn_delta_prime(1.0, r) * i <= std::pow(sn_delta(1.0, r), n) * (1 + rel) + 1e-300);
    }
    for (double delta : {-1.0, 0.0, 1.0}) {
      const auto grid = delta > 0 ? open_grid(kPi, 1000) : open_grid(10.0, 1000);
      std::vector<double> a;
      for (double r : grid) a.push_back(alpha_ratio(delta, n, r));
      for (std::size_t j = 1; j < a.size(); ++j) check(a[j] >= a[j - 1] - 1e-8 * std::max(1.0, std::abs(a[j])));
      for (std::size_t j = 1; j + 1 < a.size(); ++j) {
        const double d2 = a[j + 1] - 2 * a[j] + a[j - 1];
        const double tol = 1e-8 * std::max(1.0, std::abs(a[j]));
        check(delta > 0 ? d2 >= -tol : d2 <= tol);
      }
    }
    double prev = 0.0;
    for (double r : open_grid(kPi, 1000)) {
      const double e = epsilon_delta(1.0, n, r);
      check(e >= -1e-12 && e >= prev - 1e-10);
      prev = e;
    }
  }
  for (double delta : {0.25, 1.0, 4.0}) {
    for (double t : open_grid(kPi / (2 * std::sqrt(delta)), 1000)) {
      const double s = sn_delta(delta, t);
      check(0.5 * t <= s && s <= t * (1 + 1e-15));
    }
  }
  require(o, bad == 0, std::to_string(bad) + " violated relations");
  o.detail = std::to_string(checks) + " relations checked" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 2: volume comparison bounds.
Outcome ac2() {
  Outcome o;
  const auto res = scenario("volume-comparisons");
  std::size_t ball = 0, failed = 0;
  for (const auto& r : res.records) {
    if (r.branch.rfind("ball:", 0) == 0 || r.branch.rfind("extrinsic_ball:", 0) == 0) ++ball;
    if (!r.pass) ++failed;
  }
  const auto b = berger_volume_check(4 * kPi, 1.0, 2, kPi / 2);
  require(o, std::abs(b.slack - 2.0) <= 1e-12, "unit sphere slack " + fmt("%.15g", b.slack));
  for (int dim : {1, 2}) {
    const double vol = submanifold_volume(GreatSubsphere{dim, 3, 1.0});
    require(o, berger_volume_check(vol, 1.0, dim, kPi / 2, true).holds, "great subsphere lower bound");
  }
  require(o, ball == 5 * 200, "expected 200 samples per model");
  require(o, res.pass && failed == 0, std::to_string(failed) + " failing records");
  o.detail = std::to_string(ball) + " sampled balls, " + std::to_string(failed) + " outside 3 sigma" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

FiniteMetricMeasureSpace random_space(std::size_t index, std::uint64_t seed) {
  auto rng = make_rng(seed, index);
  const std::size_t n = 40 + static_cast<std::size_t>(uniform01(rng) * 160.0);  // <= 200
  std::vector<Coords> pts;
  std::vector<double> w;
  switch (index % 3) {
    case 0:
      for (std::size_t i = 0; i < n; ++i) pts.push_back({uniform01(rng), uniform01(rng)});
      break;
    case 1:
      for (std::size_t i = 0; i < n; ++i) {
        const double cx = 0.2 + 0.6 * double(i % 3) / 2.0;
        pts.push_back({cx + 0.04 * standard_normal(rng), 0.5 + 0.04 * standard_normal(rng)});
      }
      break;
    default: {
      const int side = static_cast<int>(std::sqrt(double(n)));
      const std::vector<int> sides{side, side};
      pts = torus_grid_points(FlatTorus{{1.0, 1.0}}, sides);
      for (std::size_t i = 0; i < pts.size(); ++i) w.push_back(0.5 + uniform01(rng));
      return FiniteMetricMeasureSpace::from_coordinates(std::move(pts), std::move(w), TorusMetric{{1.0, 1.0}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) w.push_back(0.5 + uniform01(rng));
  return FiniteMetricMeasureSpace::from_coordinates(std::move(pts), std::move(w), EuclideanMetric{});
}

// 3: cm decomposition against a brute-force certificate; capacity exact vs greedy.
Outcome ac3() {
  Outcome o{true, "", 60.0};
  const std::size_t instances = 60;
  std::size_t decomposed = 0, violations = 0, cap_compared = 0, cap_bad = 0;
  double r_min = INFINITY, r_max = 0.0;
  for (std::size_t i = 0; i < instances; ++i) {
    const auto space = random_space(i, 2024);
    const std::size_t k = 1 + i % 4;
    const double mu = space.total_mass();
    bool done = false;
    for (double r = 0.2; r > 1e-4 && !done; r *= 0.5) {
      // N: largest r-separated family inside any 4r-ball.
      double n_cover = 1.0;
      for (PointId p = 0; p < space.size(); ++p) {
        n_cover = std::max(n_cover, double(maximal_packing_cover(space, p, 4.0 * r, 4.0).size()));
      }
      std::vector<PointSet> sets;
      try {
        sets = cm_decompose(space, k, r, n_cover);
      } catch (const PreconditionError&) {
        continue;
      } catch (const CertificationError&) {
        continue;
      }
      done = true;
      ++decomposed;
      r_min = std::min(r_min, r);
      r_max = std::max(r_max, r);
      // Brute force: count, disjointness, masses, closed r-neighbourhoods.
      bool ok = sets.size() == k;
      std::vector<int> owner(space.size(), -1);
      for (std::size_t s = 0; s < sets.size() && ok; ++s) {
        double m = 0.0;
        for (PointId x : sets[s]) {
          m += space.weight(x);
          if (owner[x] != -1) ok = false;
          owner[x] = int(s);
        }
        if (!(m >= mu / (2.0 * n_cover * double(k)) * (1 - 1e-12))) ok = false;
      }
      for (PointId x = 0; x < space.size() && ok; ++x) {
        int near = 0;
        for (const auto& s : sets) {
          for (PointId a : s) {
            if (space.distance(x, a) <= r) {
              ++near;
              break;
            }
          }
        }
        if (near > 1) ok = false;
      }
      if (!ok) ++violations;
    }
    if (!done) ++violations;
    try {
      const double rc = 0.15;
      const auto exact = capacity_xi(space, 2, rc, CapacityMode::exact);
      const auto greedy = capacity_xi(space, 2, rc, CapacityMode::greedy);
      // Witness values recomputed from the chosen centres.
      auto covered = [&](const PointSet& centers) {
        double m = 0.0;
        for (PointId x = 0; x < space.size(); ++x) {
          for (PointId c : centers) {
            if (space.distance(x, c) < rc) {
              m += space.weight(x);
              break;
            }
          }
        }
        return m;
      };
      ++cap_compared;
      const bool ok = std::abs(covered(exact.centers) - exact.value) <= 1e-9 * mu &&
                      std::abs(covered(greedy.centers) - greedy.value) <= 1e-9 * mu &&
                      greedy.value <= exact.value * (1 + 1e-12) &&
                      greedy.value >= (1 - 1 / std::numbers::e) * exact.value * (1 - 1e-12);
      if (!ok) ++cap_bad;
    } catch (const BudgetExceeded&) {
    }
  }
  require(o, decomposed >= 50, "only " + std::to_string(decomposed) + " instances decomposed");
  require(o, violations == 0, std::to_string(violations) + " certificate violations");
  require(o, cap_bad == 0, std::to_string(cap_bad) + " capacity mismatches");
  o.detail = std::to_string(decomposed) + "/" + std::to_string(instances) + " certified, " +
             std::to_string(cap_compared) + " capacity comparisons" + fmt(", r in [%.3g, %.3g]", r_min, r_max) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 4: packing counts against (6 rho)^alpha C2/C1 with measured mass constants.
Outcome ac4() {
  Outcome o;
  std::size_t balls = 0, violations = 0;
  std::string constants;
  const std::vector<std::pair<FlatTorus, std::vector<int>>> tori{{FlatTorus{{1.0, 1.0}}, {32, 32}},
                                                                 {FlatTorus{{1.0, 2.0}}, {20, 40}}};
  for (std::size_t t = 0; t < tori.size(); ++t) {
    const auto& [torus, sides] = tori[t];
    auto pts = torus_grid_points(torus, sides);
    const double cell = model_volume(torus) / double(pts.size());
    const auto space = FiniteMetricMeasureSpace::from_coordinates(pts, std::vector<double>(pts.size(), cell),
                                                                  TorusMetric{torus.periods});
    const double h = std::min(torus.periods[0] / sides[0], torus.periods[1] / sides[1]);
    auto rng = make_rng(99, t);
    std::vector<std::pair<PointId, double>> sample;
    for (int i = 0; i < 50; ++i) {
      const auto p = static_cast<PointId>(uniform01(rng) * double(space.size()));
      sample.push_back({p, h + (model_inj(torus) / 2 - h) * uniform01(rng)});
    }
    for (double rho : {2.0, 4.0, 1600.0}) {
      // Constants measured at the radii the packing argument uses.
      double c1 = INFINITY, c2 = 0.0;
      for (const auto& [p, r] : sample) {
        for (double s : {r / (2 * rho), r * (1 + 1 / (2 * rho))}) {
          for (int j = 0; j < 8; ++j) {
            const auto x = static_cast<PointId>(uniform01(rng) * double(space.size()));
            const double q = set_mass(space, ball_members(space, x, s)) / (s * s);
            c1 = std::min(c1, q);
            c2 = std::max(c2, q);
          }
        }
      }
      const double bound = std::pow(6 * rho, 2) * c2 / c1;
      for (const auto& [p, r] : sample) {
        ++balls;
        if (double(maximal_packing_cover(space, p, r, rho).size()) > bound) ++violations;
      }
      if (rho == 2.0) constants += model_name(torus) + fmt(" C2/C1 %.3g (rho 2); ", c2 / c1);
    }
  }
  require(o, violations == 0, std::to_string(violations) + " counts above the bound");
  o.detail = std::to_string(balls) + " packings (100 balls x 3 rho); " + constants + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 5: Weyl asymptotics at k = 10^4.
Outcome ac5() {
  Outcome o{true, "", 10.0};
  const double limit = 4 * kPi;
  for (const ManifoldModel& model : {ManifoldModel{FlatTorus{{2 * kPi, 2 * kPi}}}, ManifoldModel{RoundSphere{2, 1.0}}}) {
    const auto spec = intrinsic_spectrum(model, 10000).eigenvalues;
    const double q = spec[10000] * model_volume(model) / 10000.0;
    require(o, std::abs(q / limit - 1) <= 0.05, model_name(model) + fmt(" ratio %.6g", q));
    o.detail += model_name(model) + fmt(" %.5g/4pi ", q / limit);
  }
  const auto res = scenario("weyl");
  require(o, res.pass, "weyl scenario failed");
  return o;
}

// 6: conformal torus pipeline.
Outcome ac6() {
  Outcome o{true, "", 120.0};
  const auto res = scenario("thm-mt");
  std::size_t failed = 0;
  double sup = 0.0;
  std::vector<double> per_factor(11, 0.0);
  for (const auto& r : res.records) {
    if (!r.pass) ++failed;
    sup = std::max(sup, r.ratio);
    const auto f = std::stoul(r.branch.substr(6, r.branch.find(':') - 6));
    per_factor[f] = std::max(per_factor[f], r.ratio);
  }
  const double spread = *std::max_element(per_factor.begin(), per_factor.end()) /
                        *std::min_element(per_factor.begin(), per_factor.end());
  require(o, res.records.size() == 11 * 20, "expected 220 records");
  require(o, failed == 0, std::to_string(failed) + " bounds below the solved eigenvalue");
  require(o, std::isfinite(sup) && spread < 2.0, fmt("sup spread %.4g", spread));
  require(o, res.pass, "scenario failed");
  o.detail = fmt("sup ratio %.4g, spread across factors %.4g", sup, spread) + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 7: minimal surfaces in S^3.
Outcome ac7() {
  Outcome o;
  const auto res = scenario("thm-mtm");
  std::size_t constructive = 0, failed = 0;
  double sup = 0.0;
  std::size_t kmax = 0;
  for (const auto& r : res.records) {
    if (r.branch.find("analytic") == std::string::npos) ++constructive;
    if (!r.pass) ++failed;
    sup = std::max(sup, r.ratio);
    kmax = std::max(kmax, r.k);
  }
  require(o, kmax == 1000 && std::isfinite(sup), "sup not finite over k <= 1000");
  require(o, constructive == 40, "expected 20 constructive bounds per surface");
  require(o, failed == 0 && res.pass, std::to_string(failed) + " failing records");
  o.detail = fmt("be4 sup %.4g over k <= %.0f, ", sup, double(kmax)) + std::to_string(constructive) +
             " constructive bounds" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 8: monotonicity of normalized extrinsic volumes.
Outcome ac8() {
  Outcome o;
  const auto res = scenario("prop-gbm");
  bool control = false;
  std::size_t failed = 0;
  for (const auto& r : res.records) {
    if (r.branch == "negative_control") control = true;
    if (r.branch == "great_circle:1") {
      const double rr = kPi / 2 * double(r.k) / 12.0;
      require(o, std::abs(r.ratio - 2 * rr / std::sin(rr)) <= 1e-12, "great circle ratio not exact");
    }
    if (!r.pass) ++failed;
  }
  // Decreasing control series must be rejected.
  std::vector<SeriesPoint> dec;
  for (int i = 1; i <= 6; ++i) dec.push_back({0.5 * i, 2.0 / i, 0.0});
  require(o, !monotonicity_check(dec, normalizer_for(0.0, 2), 1e-3).pass, "decreasing control accepted");
  require(o, control, "negative control missing");
  require(o, failed == 0 && res.pass, std::to_string(failed) + " failing steps");
  o.detail = std::to_string(res.records.size()) + " ratio steps" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 9: density at infinity.
Outcome ac9() {
  Outcome o;
  const auto cat = density_at_infinity(Catenoid{1.0}, 50.0, 1000000, 1);
  const auto plane = density_at_infinity(AffinePlane{2, 3}, 50.0, 1000000, 1);
  require(o, cat.theta >= 1.9 && cat.theta <= 2.1, fmt("catenoid theta %.6g", cat.theta));
  require(o, cat.bounds_hold, "catenoid density bounds violated");
  require(o, std::abs(plane.theta - 1.0) <= 1e-3, fmt("plane theta %.6g", plane.theta));
  require(o, plane.bounds_hold, "plane density bounds violated");
  o.detail = fmt("catenoid theta %.5g +- %.2g, plane theta %.6g", cat.theta, cat.theta_error, plane.theta) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

// 10: geodesic chains and the flat-disc Dirichlet eigenvalue.
Outcome ac10() {
  Outcome o;
  for (const ManifoldModel& model : {ManifoldModel{RoundSphere{2, 1.0}}, ManifoldModel{FlatTorus{{1.0, 1.0}}}}) {
    Coords p(static_cast<std::size_t>(embedding_dim(model)), 0.0);
    if (std::holds_alternative<RoundSphere>(model)) p[0] = 1.0;
    const auto metric = model_metric(model);
    for (int k = 1; k <= 10; ++k) {
      const auto chain = geodesic_chain(model, p, k);
      double gap = INFINITY;
      for (std::size_t i = 0; i < chain.centers.size(); ++i)
        for (std::size_t j = i + 1; j < chain.centers.size(); ++j)
          gap = std::min(gap, metric_distance(metric, chain.centers[i], chain.centers[j]));
      require(o, chain.certified && gap >= 2 * chain.r * (1 - 1e-12), model_name(model) + " chain k=" + std::to_string(k));
    }
  }
  constexpr double j01_sq = 5.783185962946784;
  std::vector<double> ratios;
  double worst = 0.0;
  for (double r : {0.05, 0.1, 0.2, 0.4}) {
    const auto disc = dirichlet_lambda0_ball(FlatTorus{{1.0, 1.0}}, r, 256);
    worst = std::max(worst, std::abs(disc.lambda0 * r * r / j01_sq - 1));
    ratios.push_back(croke_ratio(disc.lambda0, r, 2, kPi * r * r));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  require(o, worst <= 0.02, fmt("Dirichlet error %.3g", worst));
  require(o, *hi / *lo - 1 <= 0.01, fmt("croke ratio spread %.3g", *hi / *lo - 1));
  o.detail = fmt("chains k=1..10 certified; lambda0 r^2 within %.2g of j^2; croke spread %.2g", worst, *hi / *lo - 1) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 comparison relations", ac1},     {"AC2 volume comparison", ac2},
      {"AC3 decomposition certificate", ac3}, {"AC4 packing bound", ac4},
      {"AC5 Weyl limit", ac5},               {"AC6 conformal torus pipeline", ac6},
      {"AC7 minimal surfaces in S^3", ac7},  {"AC8 volume monotonicity", ac8},
      {"AC9 density at infinity", ac9},      {"AC10 chains and Dirichlet disc", ac10}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.time_limit > 0 && dt > o.time_limit) {
      o.pass = false;
      o.detail += fmt("; runtime %.1f s over %.0f s", dt, o.time_limit);
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
