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

// Decomposition of finite metric-measure spaces into well separated pieces of
// controlled mass: capacity sequences, the grow-pair step, the inductive
// k-set construction, a heuristic annuli search, and pigeonhole selection.

#ifndef SPECGEOM_DECOMPOSITION_HPP_
#define SPECGEOM_DECOMPOSITION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specgeom/comparison.hpp"
#include "specgeom/error.hpp"
#include "specgeom/metric_space.hpp"

namespace specgeom {

inline constexpr double kExactCapacityBudget = 1e6;
inline constexpr double kDefaultNeighborhoodRadius = 1.0 / 1600.0;
inline constexpr int kRadiusSearchLevels = 20;

enum class CapacityMode { exact, greedy };
enum class CapacityPolicy { automatic, exact, greedy };

inline const char* to_string(CapacityMode m) { return m == CapacityMode::exact ? "exact" : "greedy"; }

struct CapacityWitness {
  std::size_t level = 0;
  double value = 0.0;
  PointSet centers;
  CapacityMode mode = CapacityMode::greedy;
};

struct GrownPair {
  PointSet inner;   // A
  PointSet outer;   // D
  PointSet centers;
  double beta = 0.0;
  double r = 0.0;
  double inner_mass = 0.0;
  double outer_mass = 0.0;
  CapacityMode mode = CapacityMode::greedy;
};

namespace detail {

// B(p, r) for every p, plus the lowest-id representative of each distinct
// ball; duplicate balls never change a coverage value.
struct BallFamily {
  double r = 0.0;
  std::vector<PointSet> balls;
  std::vector<PointId> candidates;
};

inline BallFamily ball_family(const FiniteMetricMeasureSpace& space, double r) {
  BallFamily fam;
  fam.r = r;
  fam.balls.resize(space.size());
  for (PointId p = 0; p < space.size(); ++p) fam.balls[p] = ball_members(space, p, r);
  std::vector<PointId> order(space.size());
  std::iota(order.begin(), order.end(), PointId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](PointId a, PointId b) { return fam.balls[a] < fam.balls[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || fam.balls[order[i]] != fam.balls[order[i - 1]]) fam.candidates.push_back(order[i]);
  }
  std::sort(fam.candidates.begin(), fam.candidates.end());
  return fam;
}

inline double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double v = 1.0;
  for (std::size_t i = 0; i < k; ++i) v = v * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return v;
}

inline PointSet union_of(const std::vector<PointSet>& balls, const PointSet& centers,
                         std::size_t n) {
  std::vector<char> in(n, 0);
  for (PointId c : centers)
    for (PointId x : balls[c]) in[x] = 1;
  PointSet out;
  for (PointId x = 0; x < n; ++x)
    if (in[x]) out.push_back(x);
  return out;
}

// Max-marginal-gain greedy, stopping after `level` centres, once the covered
// mass exceeds `stop_above`, or when no candidate adds mass.
inline CapacityWitness greedy_capacity(std::span<const double> w, const BallFamily& fam,
                                       std::size_t level,
                                       double stop_above = std::numeric_limits<double>::infinity()) {
  CapacityWitness out;
  out.level = level;
  out.mode = CapacityMode::greedy;
  std::vector<char> covered(w.size(), 0);
  while (out.centers.size() < level && !(out.value > stop_above)) {
    double best_gain = 0.0;
    std::optional<PointId> best;
    for (PointId c : fam.candidates) {
      double gain = 0.0;
      for (PointId x : fam.balls[c])
        if (!covered[x]) gain += w[x];
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (!best) break;
    for (PointId x : fam.balls[*best]) covered[x] = 1;
    out.centers.push_back(*best);
    out.value += best_gain;
  }
  return out;
}

inline CapacityWitness exact_capacity(std::span<const double> w, const BallFamily& fam,
                                      std::size_t level) {
  const std::size_t m = std::min(level, fam.candidates.size());
  if (binomial(fam.candidates.size(), m) > kExactCapacityBudget) {
    throw BudgetExceeded("capacity_xi: exact enumeration exceeds " +
                         std::to_string(static_cast<long long>(kExactCapacityBudget)) + " unions");
  }
  CapacityWitness out;
  out.level = level;
  out.mode = CapacityMode::exact;
  out.value = -1.0;
  std::vector<int> count(w.size(), 0);
  std::vector<PointId> chosen;
  const auto& cand = fam.candidates;
  auto dfs = [&](auto&& self, std::size_t start, double value) -> void {
    if (chosen.size() == m) {
      if (value > out.value) {
        out.value = value;
        out.centers = chosen;
      }
      return;
    }
    for (std::size_t i = start; i + (m - chosen.size()) <= cand.size(); ++i) {
      const auto& ball = fam.balls[cand[i]];
      double gain = 0.0;
      for (PointId x : ball)
        if (count[x]++ == 0) gain += w[x];
      chosen.push_back(cand[i]);
      self(self, i + 1, value + gain);
      chosen.pop_back();
      for (PointId x : ball) --count[x];
    }
  };
  dfs(dfs, 0, 0.0);
  if (out.value < 0.0) out.value = 0.0;
  return out;
}

inline double max_ball_mass(std::span<const double> w, const BallFamily& fam) {
  double best = 0.0;
  for (PointId c : fam.candidates) best = std::max(best, set_mass(w, fam.balls[c]));
  return best;
}

inline double min_cross_distance(const FiniteMetricMeasureSpace& space, const PointSet& a,
                                 const PointSet& b) {
  double best = std::numeric_limits<double>::infinity();
  for (PointId x : a)
    for (PointId y : b) best = std::min(best, space.distance(x, y));
  return best;
}

inline PointSet complement(const PointSet& set, std::size_t n) {
  PointSet out;
  std::size_t j = 0;
  for (PointId x = 0; x < n; ++x) {
    if (j < set.size() && set[j] == x) {
      ++j;
    } else {
      out.push_back(x);
    }
  }
  return out;
}

inline bool is_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool intersects(const PointSet& a, const PointSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

inline std::size_t packing_count_bound(const FiniteMetricMeasureSpace& space, double r) {
  std::size_t worst = 0;
  for (PointId p = 0; p < space.size(); ++p) {
    worst = std::max(worst, maximal_packing_cover(space, p, 4.0 * r, 4.0).size());
  }
  return worst;
}

// Points sampled for the covering spot-check.
inline std::vector<PointId> spot_check_points(std::size_t n) {
  std::vector<PointId> out;
  const std::size_t stride = std::max<std::size_t>(1, n / 64);
  for (PointId p = 0; p < n; p += stride) out.push_back(p);
  return out;
}

inline GrownPair grow_pair_impl(const FiniteMetricMeasureSpace& space, std::span<const double> w,
                                const BallFamily& small, const BallFamily& large, double beta,
                                double n_cover, CapacityMode mode) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(beta > 0.0) || !(beta < total)) {
    throw PreconditionError("grow_pair: need 0 < beta < mu(X)");
  }
  if (max_ball_mass(w, small) > beta / 2.0) {
    throw PreconditionError("grow_pair: some r-ball carries more than beta/2");
  }
  GrownPair pair;
  pair.beta = beta;
  pair.r = small.r;
  pair.mode = mode;
  if (mode == CapacityMode::greedy) {
    auto wit = greedy_capacity(w, small, space.size(), beta);
    if (!(wit.value > beta)) throw CertificationError("grow_pair: greedy coverage never exceeded beta");
    pair.centers = wit.centers;
  } else {
    for (std::size_t level = 1;; ++level) {
      auto wit = exact_capacity(w, small, level);
      if (wit.value > beta) {
        pair.centers = wit.centers;
        break;
      }
      if (level >= small.candidates.size()) throw CertificationError("grow_pair: capacity never exceeds beta");
    }
  }
  std::sort(pair.centers.begin(), pair.centers.end());
  pair.inner = union_of(small.balls, pair.centers, space.size());
  pair.outer = union_of(large.balls, pair.centers, space.size());
  pair.inner_mass = set_mass(w, pair.inner);
  pair.outer_mass = set_mass(w, pair.outer);
  if (!is_subset(pair.inner, pair.outer)) throw CertificationError("grow_pair: A is not inside D");
  if (!(pair.inner_mass > beta)) throw CertificationError("grow_pair: mu(A) <= beta");
  if (pair.outer_mass > 2.0 * n_cover * beta) {
    throw CertificationError("grow_pair: mu(D) = " + std::to_string(pair.outer_mass) +
                             " exceeds 2 N beta = " + std::to_string(2.0 * n_cover * beta) +
                             " (" + to_string(mode) + " capacity)");
  }
  const PointSet rest = complement(pair.outer, space.size());
  if (!rest.empty() && min_cross_distance(space, pair.inner, rest) < 3.0 * small.r) {
    throw CertificationError("grow_pair: dist(A, D^c) < 3r");
  }
  return pair;
}

}  // namespace detail

// xi_level: the largest mass of a union of `level` open r-balls centred at
// data points.
inline CapacityWitness capacity_xi(const FiniteMetricMeasureSpace& space, std::size_t level,
                                   double r, CapacityMode mode) {
  if (level < 1) throw PreconditionError("capacity_xi: level must be >= 1");
  if (!(r > 0.0)) throw PreconditionError("capacity_xi: r must be > 0");
  const auto fam = detail::ball_family(space, r);
  return mode == CapacityMode::exact ? detail::exact_capacity(space.weights(), fam, level)
                                     : detail::greedy_capacity(space.weights(), fam, level);
}

// Claim step: a union A of r-balls with mu(A) > beta and its 4r-thickening D
// with mu(D) <= 2 N beta, dist(A, D^c) >= 3r.
inline GrownPair grow_pair(const FiniteMetricMeasureSpace& space, double beta, double r,
                           double n_cover, CapacityMode mode = CapacityMode::greedy) {
  if (!(r > 0.0)) throw PreconditionError("grow_pair: r must be > 0");
  if (!(n_cover >= 1.0)) throw PreconditionError("grow_pair: N must be >= 1");
  for (PointId p : detail::spot_check_points(space.size())) {
    if (static_cast<double>(maximal_packing_cover(space, p, 4.0 * r, 4.0).size()) > n_cover) {
      throw PreconditionError("grow_pair: a 4r-ball needs more than N r-balls");
    }
  }
  const auto small = detail::ball_family(space, r);
  const auto large = detail::ball_family(space, 4.0 * r);
  return detail::grow_pair_impl(space, space.weights(), small, large, beta, n_cover, mode);
}

// k sets of mass >= mu(X)/(2Nk) with pairwise disjoint r-neighbourhoods,
// built inductively on the measure restricted to the complement of the
// previous thickenings.
inline std::vector<PointSet> cm_decompose(const FiniteMetricMeasureSpace& space, std::size_t k,
                                          double r, double n_cover,
                                          CapacityPolicy policy = CapacityPolicy::automatic) {
  if (k < 1) throw PreconditionError("cm_decompose: k must be >= 1");
  if (!(r > 0.0)) throw PreconditionError("cm_decompose: r must be > 0");
  if (!(n_cover >= 1.0)) throw PreconditionError("cm_decompose: N must be >= 1");
  const double total = space.total_mass();
  const double kk = static_cast<double>(k);
  const auto small = detail::ball_family(space, r);
  const auto large = detail::ball_family(space, 4.0 * r);
  if (detail::max_ball_mass(space.weights(), small) > total / (4.0 * n_cover * kk)) {
    throw PreconditionError("cm_decompose: some r-ball carries more than mu(X)/(4Nk)");
  }
  for (PointId p : detail::spot_check_points(space.size())) {
    if (static_cast<double>(maximal_packing_cover(space, p, 4.0 * r, 4.0).size()) > n_cover) {
      throw PreconditionError("cm_decompose: a 4r-ball needs more than N r-balls");
    }
  }
  const double beta = total / (2.0 * n_cover * kk);
  std::vector<double> w(space.weights().begin(), space.weights().end());
  std::vector<char> removed(space.size(), 0);
  std::vector<PointSet> sets;
  for (std::size_t stage = 0; stage < k; ++stage) {
    auto attempt = [&](CapacityMode mode) {
      return detail::grow_pair_impl(space, w, small, large, beta, n_cover, mode);
    };
    GrownPair pair;
    try {
      if (policy == CapacityPolicy::exact) {
        pair = attempt(CapacityMode::exact);
      } else {
        try {
          pair = attempt(CapacityMode::greedy);
        } catch (const CertificationError&) {
          if (policy == CapacityPolicy::greedy) throw;
          pair = attempt(CapacityMode::exact);
        }
      }
    } catch (const CertificationError& e) {
      throw CertificationError("cm_decompose stage " + std::to_string(stage) + ": " + e.what());
    } catch (const BudgetExceeded& e) {
      throw CertificationError("cm_decompose stage " + std::to_string(stage) +
                               ": greedy certification failed and " + e.what());
    } catch (const PreconditionError& e) {
      throw CertificationError("cm_decompose stage " + std::to_string(stage) + ": " + e.what());
    }
    PointSet a;
    for (PointId x : pair.inner)
      if (!removed[x]) a.push_back(x);
    for (PointId x : pair.outer) {
      removed[x] = 1;
      w[x] = 0.0;
    }
    sets.push_back(std::move(a));
  }
  return sets;
}

struct AnnuliFamily {
  std::vector<Annulus> annuli;
  std::vector<PointSet> sets;
  double c_achieved = std::numeric_limits<double>::infinity();
};

struct AnnuliSearchOptions {
  double max_outer = std::numeric_limits<double>::infinity();
  int radius_levels = kRadiusSearchLevels;
  double max_constant = 1e12;
};

// Greedy search over centres and dyadic radii for k annuli whose doubles are
// pairwise disjoint, lowering the per-annulus mass threshold geometrically.
inline std::optional<AnnuliFamily> gny_annuli_search(const FiniteMetricMeasureSpace& space,
                                                     std::size_t k,
                                                     const AnnuliSearchOptions& opt = {}) {
  if (k < 1) throw PreconditionError("gny_annuli_search: k must be >= 1");
  const std::size_t n = space.size();
  const double total = space.total_mass();
  auto w = space.weights();

  // Per centre: points sorted by distance and prefix masses, so that an
  // annulus is a contiguous range.
  std::vector<std::vector<PointId>> order(n);
  std::vector<std::vector<double>> dist(n), prefix(n);
  double diameter = 0.0;
  for (PointId a = 0; a < n; ++a) {
    auto& o = order[a];
    o.resize(n);
    std::iota(o.begin(), o.end(), PointId{0});
    std::stable_sort(o.begin(), o.end(), [&](PointId x, PointId y) {
      return space.distance(a, x) < space.distance(a, y);
    });
    dist[a].resize(n);
    prefix[a].assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      dist[a][i] = space.distance(a, o[i]);
      prefix[a][i + 1] = prefix[a][i] + w[o[i]];
    }
    diameter = std::max(diameter, dist[a].back());
  }
  const double top = std::min(opt.max_outer, diameter > 0.0 ? 2.0 * diameter : 1.0);
  std::vector<double> radii;
  for (int j = 0; j <= opt.radius_levels; ++j) radii.push_back(top * std::ldexp(1.0, -j));
  std::reverse(radii.begin(), radii.end());

  struct Candidate {
    Annulus annulus;
    double mass, doubled_mass;
    std::size_t lo, hi, dlo, dhi;  // index ranges in order[center]
  };
  auto range = [&](PointId a, double lo, double hi) {
    const auto& d = dist[a];
    const std::size_t i = std::lower_bound(d.begin(), d.end(), lo) - d.begin();
    const std::size_t j = std::lower_bound(d.begin(), d.end(), hi) - d.begin();
    return std::pair{i, j};
  };
  std::vector<Candidate> cands;
  for (PointId a = 0; a < n; ++a) {
    for (std::size_t io = 0; io < radii.size(); ++io) {
      for (std::size_t ii = 0; ii <= io; ++ii) {
        const double inner = ii == 0 ? 0.0 : radii[ii - 1];
        const double outer = radii[io];
        if (!(inner < outer)) continue;
        const auto [lo, hi] = range(a, inner, outer);
        if (lo >= hi) continue;
        const auto [dlo, dhi] = range(a, inner / 2.0, 2.0 * outer);
        cands.push_back({{a, inner, outer}, prefix[a][hi] - prefix[a][lo],
                         prefix[a][dhi] - prefix[a][dlo], lo, hi, dlo, dhi});
      }
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    return x.doubled_mass < y.doubled_mass;
  });

  const double kk = static_cast<double>(k);
  for (double threshold = total / kk; threshold >= total / (kk * opt.max_constant);
       threshold /= 2.0) {
    std::vector<char> blocked(n, 0);
    AnnuliFamily fam;
    double min_mass = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) {
      if (fam.annuli.size() == k) break;
      if (c.mass < threshold) continue;
      const auto& o = order[c.annulus.center];
      bool free = true;
      for (std::size_t i = c.dlo; i < c.dhi && free; ++i) free = !blocked[o[i]];
      if (!free) continue;
      for (std::size_t i = c.dlo; i < c.dhi; ++i) blocked[o[i]] = 1;
      PointSet members(o.begin() + c.lo, o.begin() + c.hi);
      std::sort(members.begin(), members.end());
      fam.annuli.push_back(c.annulus);
      fam.sets.push_back(std::move(members));
      min_mass = std::min(min_mass, c.mass);
    }
    if (fam.annuli.size() == k) {
      fam.c_achieved = total / (kk * min_mass);
      return fam;
    }
  }
  return std::nullopt;
}

enum class Branch { annuli, neighborhood };
inline const char* to_string(Branch b) { return b == Branch::annuli ? "annuli" : "neighborhood"; }

struct CertificateEntry {
  std::string name;
  bool ok = false;
};

struct DecompositionParams {
  std::size_t k = 0;
  double r = 0.0;          // cm radius (neighborhood branch)
  double r0 = 0.0;         // neighbourhood radius of the normalized statement
  double n_cover = 0.0;    // measured covering count used by the construction
  double c_achieved = 0.0;
  double c_target = 0.0;   // 64 N(1600) for the supplied refinement function
  double max_outer = 0.0;  // annuli branch outer-radius cap
};

struct DecompositionResult {
  std::vector<PointSet> sets;
  Branch branch = Branch::neighborhood;
  std::vector<Annulus> annuli;  // annuli branch only
  DecompositionParams params;
  std::vector<CertificateEntry> certificate;
  std::string diagnostics;

  bool certified() const {
    return std::all_of(certificate.begin(), certificate.end(),
                       [](const CertificateEntry& e) { return e.ok; });
  }
};

// Recomputes every claim of a result from raw distances and weights.
inline std::vector<CertificateEntry> verify_decomposition(const FiniteMetricMeasureSpace& space,
                                                          const DecompositionResult& res) {
  std::vector<CertificateEntry> cert;
  const std::size_t n = space.size();
  const auto& sets = res.sets;
  cert.push_back({"count", sets.size() == res.params.k});
  bool disjoint = true;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (detail::intersects(sets[i], sets[j])) disjoint = false;
  cert.push_back({"sets_disjoint", disjoint});
  double min_mass = std::numeric_limits<double>::infinity();
  for (const auto& s : sets) {
    double m = 0.0;
    for (PointId x : s) m += space.weight(x);
    min_mass = std::min(min_mass, m);
  }
  const double bound = space.total_mass() / (res.params.c_achieved * static_cast<double>(res.params.k));
  cert.push_back({"mass_lower_bound", !sets.empty() && min_mass >= bound * (1.0 - 1e-12)});
  if (res.branch == Branch::neighborhood) {
    const double r = res.params.r;
    bool nbhd_disjoint = true;
    for (PointId x = 0; x < n && nbhd_disjoint; ++x) {
      int hits = 0;
      for (const auto& s : sets) {
        for (PointId a : s) {
          if (space.distance(x, a) <= r) {
            ++hits;
            break;
          }
        }
      }
      if (hits > 1) nbhd_disjoint = false;
    }
    cert.push_back({"neighborhoods_disjoint", nbhd_disjoint});
    bool separated = true;
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j)
        if (detail::min_cross_distance(space, sets[i], sets[j]) < 2.0 * r) separated = false;
    cert.push_back({"separation_2r", separated});
  } else {
    bool ok_members = res.annuli.size() == sets.size();
    bool doubled_disjoint = ok_members;
    bool radii_ok = ok_members;
    std::vector<int> owner(n, -1);
    for (std::size_t i = 0; ok_members && i < sets.size(); ++i) {
      const auto& a = res.annuli[i];
      if (a.outer > res.params.max_outer) radii_ok = false;
      PointSet members;
      for (PointId x = 0; x < n; ++x) {
        const double d = space.distance(a.center, x);
        if (d >= a.inner && d < a.outer) members.push_back(x);
        if (d >= a.inner / 2.0 && d < 2.0 * a.outer) {
          if (owner[x] >= 0) doubled_disjoint = false;
          owner[x] = static_cast<int>(i);
        }
      }
      if (members != sets[i]) ok_members = false;
    }
    cert.push_back({"annulus_members", ok_members});
    cert.push_back({"doubled_disjoint", doubled_disjoint});
    cert.push_back({"outer_radius", radii_ok});
  }
  return cert;
}

struct DecomposeOptions {
  double r0 = kDefaultNeighborhoodRadius;
  int radius_levels = kRadiusSearchLevels;
  double max_outer = 1.0;
  CapacityPolicy policy = CapacityPolicy::automatic;
};

// Neighbourhood branch at the largest dyadic r <= r0 whose mass condition
// holds; annuli search otherwise.
inline DecompositionResult decompose(const FiniteMetricMeasureSpace& space, std::size_t k,
                                     const RefinementKind& refinement,
                                     const DecomposeOptions& opt = {}) {
  if (k < 1) throw PreconditionError("decompose: k must be >= 1");
  const double total = space.total_mass();
  const double kk = static_cast<double>(k);
  DecompositionResult res;
  res.params.k = k;
  res.params.r0 = opt.r0;
  res.params.max_outer = opt.max_outer;
  res.params.c_target = 64.0 * refinement_function(refinement, 1600.0);
  std::string diag;
  for (int level = 0; level <= opt.radius_levels; ++level) {
    const double r = std::ldexp(opt.r0, -level);
    const auto small = detail::ball_family(space, r);
    const double n_cover =
        std::max<double>(1.0, static_cast<double>(detail::packing_count_bound(space, r)));
    if (detail::max_ball_mass(space.weights(), small) > total / (4.0 * n_cover * kk)) continue;
    try {
      res.sets = cm_decompose(space, k, r, n_cover, opt.policy);
    } catch (const std::exception& e) {
      diag += std::string("r=") + std::to_string(r) + ": " + e.what() + "; ";
      continue;
    }
    res.branch = Branch::neighborhood;
    res.params.r = r;
    res.params.n_cover = n_cover;
    double min_mass = std::numeric_limits<double>::infinity();
    for (const auto& s : res.sets) min_mass = std::min(min_mass, set_mass(space, s));
    res.params.c_achieved = total / (kk * min_mass);
    res.certificate = verify_decomposition(space, res);
    res.diagnostics = diag;
    return res;
  }
  diag += "no dyadic radius satisfies the ball-mass condition; ";
  AnnuliSearchOptions aopt;
  aopt.max_outer = opt.max_outer;
  aopt.radius_levels = opt.radius_levels;
  if (auto fam = gny_annuli_search(space, k, aopt)) {
    res.branch = Branch::annuli;
    res.sets = std::move(fam->sets);
    res.annuli = std::move(fam->annuli);
    res.params.c_achieved = fam->c_achieved;
    res.certificate = verify_decomposition(space, res);
    res.diagnostics = diag;
    return res;
  }
  throw CertificationError("decompose: both branches failed (" + diag +
                           "annuli search found nothing); contract unverified for this instance");
}

// k+1 indices whose primary (and secondary) masses are at most total/k.
// Needs 2(k+1) sets for one measure, 3(k+1) for two; prefers the lightest.
inline std::vector<std::size_t> pigeonhole_select(
    std::span<const double> primary, std::size_t k,
    std::optional<std::span<const double>> secondary = std::nullopt) {
  if (k < 1) throw PreconditionError("pigeonhole_select: k must be >= 1");
  const std::size_t need = (secondary ? 3 : 2) * (k + 1);
  if (primary.size() < need) {
    throw PreconditionError("pigeonhole_select: need at least " + std::to_string(need) + " sets");
  }
  if (secondary && secondary->size() != primary.size()) {
    throw PreconditionError("pigeonhole_select: mass lists differ in length");
  }
  const double kk = static_cast<double>(k);
  const double p_total = std::accumulate(primary.begin(), primary.end(), 0.0);
  const double s_total = secondary ? std::accumulate(secondary->begin(), secondary->end(), 0.0) : 0.0;
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < primary.size(); ++i) {
    if (primary[i] > p_total / kk) continue;
    if (secondary && (*secondary)[i] > s_total / kk) continue;
    ok.push_back(i);
  }
  if (ok.size() < k + 1) throw CertificationError("pigeonhole_select: too few light sets");
  std::stable_sort(ok.begin(), ok.end(),
                   [&](std::size_t a, std::size_t b) { return primary[a] < primary[b]; });
  ok.resize(k + 1);
  std::sort(ok.begin(), ok.end());
  return ok;
}

}  // namespace specgeom

#endif  // SPECGEOM_DECOMPOSITION_HPP_
