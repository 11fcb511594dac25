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

// End-to-end eigenvalue-bound pipelines: normalize, decompose the measure,
// select light sets, build cutoff test functions, bound lambda_k through the
// variational principle and compare against the spectrum.

#ifndef SPECGEOM_PIPELINE_HPP_
#define SPECGEOM_PIPELINE_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "specgeom/bounds.hpp"
#include "specgeom/cutoff.hpp"
#include "specgeom/decomposition.hpp"
#include "specgeom/eigensolve.hpp"
#include "specgeom/grid.hpp"
#include "specgeom/rayleigh.hpp"

namespace specgeom {

inline constexpr Eigen::Index kPipelineDenseLimit = 1024;

// A closed surface discretized on a (possibly conformally weighted) periodic
// grid of its intrinsic flat parametrization, with an embedding into an
// ambient space whose distance drives the decomposition.
struct SurfaceSetup {
  ConformalGrid grid;
  bool consistent_mass = false;
  Metric ambient = EuclideanMetric{};
  std::function<Coords(const Coords&)> embed;  // identity when empty
  RefinementKind refinement = BishopGromovRefinement{2};
  double r0 = kDefaultNeighborhoodRadius;
  double max_outer = 1.0;
  bool two_measures = false;  // second measure: the unweighted grid area
  CapacityPolicy policy = CapacityPolicy::automatic;
};

struct BoundRecord {
  std::size_t k = 0;
  double lambda = 0.0;  // solved lambda_k of the discrete operator
  double bound = 0.0;   // constructive variational upper bound
  Branch branch = Branch::neighborhood;
  double c_achieved = 0.0;
  double c_target = 0.0;
  bool certified = false;
  std::string diagnostics;
};

struct SurfaceRun {
  DiscreteOperator op;
  EigenSolution spectrum;
  FiniteMetricMeasureSpace space;
  std::vector<double> secondary;  // per-node secondary measure (empty if unused)
  std::vector<BoundRecord> records;
};

namespace detail {

inline CutoffFunction cutoff_for(const FiniteMetricMeasureSpace& space, const DecompositionResult& res,
                                 std::size_t i) {
  if (res.branch == Branch::annuli) {
    const auto& a = res.annuli[i];
    return annulus_cutoff(space, a.center, a.inner, a.outer);
  }
  return neighborhood_cutoff(space, res.sets[i], res.params.r);
}

inline double support_mass(std::span<const double> w, const CutoffFunction& u) {
  double m = 0.0;
  for (std::size_t x = 0; x < u.values.size(); ++x)
    if (u.values[x] > 0.0) m += w[x];
  return m;
}

inline SurfaceRun prepare_surface(const SurfaceSetup& setup, std::size_t kmax) {
  setup.grid.validate();
  SurfaceRun run{conformal_operator(setup.grid, setup.consistent_mass), {}, grid_space(setup.grid), {}, {}};
  // Dense is allowed up to kDenseEigenLimit but the cubic cost dominates long before.
  const auto method = run.op.size() <= kPipelineDenseLimit ? SpectrumMethod::dense : SpectrumMethod::iterative;
  run.spectrum = eigensolve(run.op, kmax, method);
  std::vector<Coords> pts;
  std::vector<double> w;
  for (std::size_t i = 0; i < setup.grid.size(); ++i) {
    const Coords x = setup.grid.node(i);
    pts.push_back(setup.embed ? setup.embed(x) : x);
    w.push_back(run.op.mass[static_cast<Eigen::Index>(i)]);
    if (setup.two_measures) run.secondary.push_back(setup.grid.cell_area());
  }
  run.space = FiniteMetricMeasureSpace::from_coordinates(std::move(pts), std::move(w), setup.ambient);
  return run;
}

}  // namespace detail

// One bound per k in [1, kmax]: decompose into 2(k+1) sets (3(k+1) with two
// measures), keep k+1 whose cutoff supports are light, and take the
// projected-pencil bound of their cutoffs.
inline SurfaceRun run_surface_pipeline(const SurfaceSetup& setup, std::size_t kmax) {
  if (kmax < 1) throw PreconditionError("pipeline: kmax must be >= 1");
  SurfaceRun run = detail::prepare_surface(setup, kmax);
  const auto& space = run.space;
  DecomposeOptions opt;
  opt.r0 = setup.r0;
  opt.max_outer = setup.max_outer;
  opt.policy = setup.policy;
  for (std::size_t k = 1; k <= kmax; ++k) {
    BoundRecord rec;
    rec.k = k;
    rec.lambda = run.spectrum.spectrum.eigenvalues[k];
    const std::size_t count = (setup.two_measures ? 3 : 2) * (k + 1);
    const auto res = decompose(space, count, setup.refinement, opt);
    rec.branch = res.branch;
    rec.c_achieved = res.params.c_achieved;
    rec.c_target = res.params.c_target;
    rec.diagnostics = res.diagnostics;
    std::vector<CutoffFunction> cut;
    std::vector<double> primary, secondary;
    for (std::size_t i = 0; i < res.sets.size(); ++i) {
      cut.push_back(detail::cutoff_for(space, res, i));
      primary.push_back(detail::support_mass(space.weights(), cut.back()));
      if (setup.two_measures) secondary.push_back(detail::support_mass(run.secondary, cut.back()));
    }
    const auto chosen = setup.two_measures
                            ? pigeonhole_select(primary, k, std::span<const double>(secondary))
                            : pigeonhole_select(primary, k);
    std::vector<Eigen::VectorXd> funcs;
    for (std::size_t i : chosen) funcs.push_back(to_vector(cut[i].values));
    rec.bound = minmax_upper_bound(run.op, funcs).bound;
    rec.certified = res.certified();
    run.records.push_back(std::move(rec));
  }
  return run;
}

struct ConsistencyVerdict {
  bool ok = true;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();  // min (bound - lambda) / lambda
};

// Every constructive bound must dominate the true eigenvalue; a violation
// means an implementation bug, never a counterexample.
inline ConsistencyVerdict compare_bound_vs_spectrum(std::span<const double> bounds,
                                                    std::span<const double> spectrum,
                                                    std::size_t first_k = 1, double rel_tol = 1e-9) {
  if (bounds.empty()) throw PreconditionError("compare_bound_vs_spectrum: no bounds");
  if (spectrum.size() < first_k + bounds.size()) {
    throw PreconditionError("compare_bound_vs_spectrum: spectrum too short for the bounds");
  }
  ConsistencyVerdict v;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double lam = spectrum[first_k + i];
    const double margin = lam > 0.0 ? (bounds[i] - lam) / lam : bounds[i] - lam;
    v.worst_margin = std::min(v.worst_margin, margin);
    if (bounds[i] < lam * (1.0 - rel_tol) - rel_tol) {
      v.ok = false;
      ++v.violations;
    }
  }
  return v;
}

// Greedy subset of a point set whose members are pairwise > sep apart.
inline PointSet separated_subset(const FiniteMetricMeasureSpace& space, const PointSet& set, double sep) {
  PointSet out;
  for (PointId x : set) {
    bool ok = true;
    for (PointId y : out)
      if (!(space.distance(x, y) > sep)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

struct CapRecord {
  std::size_t k = 0;
  double bound = 0.0;
  Branch branch = Branch::neighborhood;
  double c_achieved = 0.0;
  bool certified = false;
};

// Continuum bounds for a totally geodesic sphere sample: the neighbourhood
// cutoff of each selected set is bounded with exact cap volumes of the space
// form of curvature delta (see neighborhood_cutoff_quotient_bound); disjoint
// supports make the largest quotient an upper bound for lambda_k.
inline std::vector<CapRecord> cap_bound_pipeline(const FiniteMetricMeasureSpace& space, double delta,
                                                 int dim, std::size_t kmax, const RefinementKind& refinement,
                                                 double r0 = kDefaultNeighborhoodRadius) {
  if (kmax < 1) throw PreconditionError("pipeline: kmax must be >= 1");
  std::vector<CapRecord> out;
  DecomposeOptions opt;
  opt.r0 = r0;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto res = decompose(space, 2 * (k + 1), refinement, opt);
    if (res.branch != Branch::neighborhood) {
      throw CertificationError("cap bound pipeline: needs the neighbourhood branch");
    }
    const double r = res.params.r;
    std::vector<double> primary;
    std::vector<CutoffFunction> cut;
    for (std::size_t i = 0; i < res.sets.size(); ++i) {
      cut.push_back(neighborhood_cutoff(space, res.sets[i], r));
      primary.push_back(detail::support_mass(space.weights(), cut.back()));
    }
    CapRecord rec{k, 0.0, res.branch, res.params.c_achieved, res.certified()};
    bool separated = true;
    for (std::size_t i : pigeonhole_select(primary, k)) {
      const auto& set = res.sets[i];
      for (std::size_t j = 0; j < res.sets.size(); ++j)
        if (j != i && !(detail::min_cross_distance(space, set, res.sets[j]) > 2.0 * r)) separated = false;
      const auto sep = separated_subset(space, set, 2.0 * r);
      rec.bound = std::max(rec.bound, neighborhood_cutoff_quotient_bound(delta, dim, r, set.size(), sep.size()));
    }
    rec.certified = rec.certified && separated;
    out.push_back(rec);
  }
  return out;
}

}  // namespace specgeom

#endif  // SPECGEOM_PIPELINE_HPP_
