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

// Smallest eigenpairs of the pencil K u = lambda M u.
//
// dense:     Eigen's generalized self-adjoint solver on dense copies.
// iterative: block Lanczos on the shift-inverted operator (K + s M)^{-1} M
//            in the M inner product, with full reorthogonalization and thick
//            restarts from the current Ritz vectors.

#ifndef SPECGEOM_EIGENSOLVE_HPP_
#define SPECGEOM_EIGENSOLVE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "specgeom/error.hpp"
#include "specgeom/grid.hpp"
#include "specgeom/rng.hpp"
#include "specgeom/spectra.hpp"

namespace specgeom {

inline constexpr Eigen::Index kDenseEigenLimit = 4096;

struct EigenSolveOptions {
  double tol = 1e-8;
  int max_restarts = 60;
  std::uint64_t seed = 1;
  double shift = 0.0;  // 0 selects 1e-3 * mean(diag K) / mean(diag M)
};

struct EigenSolution {
  SpectrumEstimate spectrum;
  Eigen::MatrixXd vectors;  // M-orthonormal columns
  double max_residual = 0.0;
  int restarts = 0;
};

namespace detail {

inline double inf_norm(const SparseMatrix& a) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) rows[it.row()] += std::abs(it.value());
  return rows.size() ? rows.maxCoeff() : 0.0;
}

// M-orthonormalizes the columns of x against q and among themselves,
// dropping columns that are numerically dependent.
inline Eigen::MatrixXd m_orthonormalize(const SparseMatrix& m, const Eigen::MatrixXd& q,
                                        Eigen::MatrixXd x) {
  for (int pass = 0; pass < 2 && q.cols() > 0; ++pass) x -= q * (q.transpose() * (m * x));
  Eigen::MatrixXd out(x.rows(), 0);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    Eigen::VectorXd v = x.col(j);
    const double before = std::sqrt(std::max(0.0, v.dot(m * v)));
    for (int pass = 0; pass < 2; ++pass) {
      if (q.cols() > 0) v -= q * (q.transpose() * (m * v));
      if (out.cols() > 0) v -= out * (out.transpose() * (m * v));
    }
    const double norm = std::sqrt(std::max(0.0, v.dot(m * v)));
    if (!(norm > 1e-10 * before) || norm == 0.0) continue;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = v / norm;
  }
  return out;
}

inline Eigen::MatrixXd random_block(Eigen::Index n, Eigen::Index b, Rng& rng) {
  Eigen::MatrixXd x(n, b);
  for (Eigen::Index j = 0; j < b; ++j)
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = standard_normal(rng);
  return x;
}

}  // namespace detail

inline EigenSolution eigensolve_dense(const DiscreteOperator& op, std::size_t count) {
  const Eigen::Index n = op.size();
  if (n > kDenseEigenLimit) throw PreconditionError("eigensolve: dense method limited to 4096 dofs");
  const auto want = static_cast<Eigen::Index>(count + 1);
  if (want > n) throw PreconditionError("eigensolve: more eigenvalues requested than dofs");
  const Eigen::MatrixXd k = Eigen::MatrixXd(op.stiffness);
  const Eigen::MatrixXd m = Eigen::MatrixXd(op.mass_matrix());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(k, m, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigensolve: dense solver failed");
  EigenSolution sol;
  sol.spectrum.method = SpectrumMethod::dense;
  sol.vectors = es.eigenvectors().leftCols(want);
  for (Eigen::Index i = 0; i < want; ++i) sol.spectrum.eigenvalues.push_back(std::max(0.0, es.eigenvalues()[i]));
  return sol;
}

inline EigenSolution eigensolve_iterative(const DiscreteOperator& op, std::size_t count,
                                          const EigenSolveOptions& opt = {}) {
  const Eigen::Index n = op.size();
  const auto want = static_cast<Eigen::Index>(count + 1);
  if (want > n) throw PreconditionError("eigensolve: more eigenvalues requested than dofs");
  const SparseMatrix& k = op.stiffness;
  const SparseMatrix m = op.mass_matrix();
  double shift = opt.shift;
  if (!(shift > 0.0)) shift = 1e-3 * k.diagonal().mean() / m.diagonal().mean();
  if (!(shift > 0.0)) shift = 1e-3;
  const SparseMatrix a = k + shift * m;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
  if (ldlt.info() != Eigen::Success) throw ConvergenceError("eigensolve: factorization of K + sM failed");
  auto apply = [&](const Eigen::MatrixXd& x) -> Eigen::MatrixXd { return ldlt.solve(m * x); };

  const double k_norm = detail::inf_norm(k), m_norm = detail::inf_norm(m);
  const Eigen::Index block = std::min(want, n);
  const Eigen::Index cap = std::min(n, 3 * want + 30);
  auto rng = make_rng(opt.seed, 0x1a);
  Eigen::MatrixXd start = detail::random_block(n, block, rng);

  EigenSolution sol;
  sol.spectrum.method = SpectrumMethod::iterative;
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    Eigen::MatrixXd q = detail::m_orthonormalize(m, Eigen::MatrixXd(n, 0), start);
    Eigen::MatrixXd bq(n, 0);
    Eigen::Index done = 0;  // columns of q already mapped through B
    while (q.cols() < cap || done < q.cols()) {
      Eigen::MatrixXd fresh = apply(q.rightCols(q.cols() - done));
      bq.conservativeResize(Eigen::NoChange, q.cols());
      bq.rightCols(q.cols() - done) = fresh;
      done = q.cols();
      if (q.cols() >= cap) break;
      Eigen::MatrixXd next = detail::m_orthonormalize(m, q, fresh.leftCols(std::min<Eigen::Index>(fresh.cols(), cap - q.cols())));
      if (next.cols() == 0) {
        next = detail::m_orthonormalize(m, q, detail::random_block(n, std::min(block, cap - q.cols()), rng));
        if (next.cols() == 0) break;
      }
      const Eigen::Index old = q.cols();
      q.conservativeResize(Eigen::NoChange, old + next.cols());
      q.rightCols(next.cols()) = next;
    }
    Eigen::MatrixXd h = q.transpose() * (m * bq);
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("eigensolve: projected problem failed");
    const Eigen::Index p = h.rows();
    // Largest theta = 1/(lambda + s) first.
    Eigen::MatrixXd ritz(n, p);
    std::vector<double> lam(p);
    for (Eigen::Index j = 0; j < p; ++j) {
      Eigen::VectorXd x = q * es.eigenvectors().col(p - 1 - j);
      const double xm = x.dot(m * x);
      x /= std::sqrt(xm);
      ritz.col(j) = x;
      lam[j] = x.dot(k * x);
    }
    bool converged = p >= want;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < std::min(want, p); ++j) {
      const Eigen::VectorXd x = ritz.col(j);
      const double res = (k * x - lam[j] * (m * x)).norm() / x.norm();
      const double scale = k_norm + std::abs(lam[j]) * m_norm;
      worst = std::max(worst, res / scale);
      if (res > opt.tol * scale) converged = false;
    }
    sol.max_residual = worst;
    sol.restarts = restart;
    if (converged || p == n) {
      std::vector<Eigen::Index> order(want);
      for (Eigen::Index j = 0; j < want; ++j) order[j] = j;
      std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return lam[x] < lam[y]; });
      sol.vectors.resize(n, want);
      for (Eigen::Index j = 0; j < want; ++j) {
        sol.vectors.col(j) = ritz.col(order[j]);
        sol.spectrum.eigenvalues.push_back(std::max(0.0, lam[order[j]]));
      }
      if (!converged && p == n) sol.spectrum.note = "full-space Rayleigh-Ritz";
      return sol;
    }
    start = ritz.leftCols(std::min(p, want + block));
  }
  throw ConvergenceError("eigensolve: iterative solver did not converge (residual " +
                         std::to_string(sol.max_residual) + ")");
}

inline EigenSolution eigensolve(const DiscreteOperator& op, std::size_t count, SpectrumMethod method,
                                const EigenSolveOptions& opt = {}) {
  if (method == SpectrumMethod::dense) return eigensolve_dense(op, count);
  if (method == SpectrumMethod::iterative) return eigensolve_iterative(op, count, opt);
  throw PreconditionError("eigensolve: analytic method is not a solver");
}

}  // namespace specgeom

#endif  // SPECGEOM_EIGENSOLVE_HPP_
