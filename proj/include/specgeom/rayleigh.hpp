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

// Rayleigh quotients and variational upper bounds from test functions.

#ifndef SPECGEOM_RAYLEIGH_HPP_
#define SPECGEOM_RAYLEIGH_HPP_

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "specgeom/error.hpp"
#include "specgeom/grid.hpp"

namespace specgeom {

inline double rayleigh_quotient(const DiscreteOperator& op, const Eigen::VectorXd& u) {
  if (u.size() != op.size()) throw PreconditionError("rayleigh_quotient: size mismatch");
  const double mass = op.l2(u);
  if (!(mass > 0.0)) throw PreconditionError("rayleigh_quotient: zero L2 mass");
  return op.energy(u) / mass;
}

struct MinmaxBound {
  double bound = 0.0;           // top eigenvalue of the pencil restricted to span{u_i}
  double max_individual = 0.0;  // max_i R(u_i)
  std::size_t functions = 0;
};

// Upper bound for lambda_k from k+1 test functions with pairwise disjoint
// node supports: the largest Rayleigh quotient over their span. It equals
// max_i R(u_i) when the functions are also K- and M-orthogonal.
inline MinmaxBound minmax_upper_bound(const DiscreteOperator& op,
                                      const std::vector<Eigen::VectorXd>& functions) {
  if (functions.empty()) throw PreconditionError("minmax_upper_bound: no functions");
  const Eigen::Index n = op.size();
  std::vector<int> owner(n, -1);
  MinmaxBound out;
  out.functions = functions.size();
  Eigen::MatrixXd u(n, static_cast<Eigen::Index>(functions.size()));
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const auto& f = functions[i];
    if (f.size() != n) throw PreconditionError("minmax_upper_bound: size mismatch");
    for (Eigen::Index x = 0; x < n; ++x) {
      if (f[x] == 0.0) continue;
      if (owner[x] >= 0) throw PreconditionError("minmax_upper_bound: overlapping supports");
      owner[x] = static_cast<int>(i);
    }
    out.max_individual = std::max(out.max_individual, rayleigh_quotient(op, f));
    u.col(static_cast<Eigen::Index>(i)) = f;
  }
  const Eigen::MatrixXd ku = u.transpose() * (op.stiffness * u);
  const Eigen::MatrixXd mu = u.transpose() * (op.mass_matrix() * u);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (ku + ku.transpose()),
                                                              0.5 * (mu + mu.transpose()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("minmax_upper_bound: projected pencil failed");
  out.bound = es.eigenvalues().maxCoeff();
  return out;
}

inline Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace specgeom

#endif  // SPECGEOM_RAYLEIGH_HPP_
